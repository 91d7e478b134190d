#pragma once

#include "hyperblock/cellulation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hyperblock {

using ClassId = std::uint16_t;

/// Orbitals of PSL2(F_q) on cusps. Class 0 is the diagonal; the others are
/// numbered by the smallest cusp of the corresponding suborbit of the
/// stabilizer of the cusp at infinity.
struct AssociationScheme {
  std::size_t v = 0;
  std::size_t m = 0; ///< number of non-diagonal classes
  CuspId base = 0;
  std::vector<ClassId> class_of;  ///< v x v, row-major
  std::vector<std::size_t> valency; ///< c_j, indexed by class
  std::vector<ClassId> transpose;   ///< class of (y, x) given class of (x, y)
  std::vector<std::vector<CuspId>> suborbits; ///< suborbit of `base` per class

  ClassId cls(CuspId x, CuspId y) const { return class_of[static_cast<std::size_t>(x) * v + y]; }
  std::size_t classes() const { return m + 1; }
};

AssociationScheme build_scheme(const GroupTable &table, const CuspIndex &cusps);
/// Convenience overload reusing the cellulation's group data.
AssociationScheme build_scheme(const Cellulation &cell);

enum class AxiomMode { Exhaustive, Sampled };

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr std::size_t kExhaustiveMaxV = 256;
inline constexpr std::size_t kSamplesPerClass = 64;

struct SchemeAxiomReport {
  AxiomMode mode = AxiomMode::Exhaustive;
  bool valencies_constant = false;
  bool intersections_constant = false;
  std::size_t pairs_checked = 0;
  /// p^k_{ij} stored at (k * n + i) * n + j with n = m + 1.
  std::vector<std::size_t> intersection_numbers;

  bool pass() const { return valencies_constant && intersections_constant; }
  std::size_t p(std::size_t k, std::size_t i, std::size_t j, std::size_t n) const {
    return intersection_numbers[(k * n + i) * n + j];
  }
};

/// Checks constant class degrees and constant p^k_{ij}. Exhaustive mode
/// requires v <= 256 (NotApplicable otherwise). Throws SchemeViolation
/// naming the first witnessing pair.
SchemeAxiomReport verify_scheme_axioms(const AssociationScheme &scheme, AxiomMode mode,
                                       std::uint64_t seed = kDefaultSeed);

std::string to_string(AxiomMode mode);

struct PBIBDReport {
  std::size_t v = 0, b = 0, r = 0, k = 0, m = 0;
  std::vector<int> lambda_by_class; ///< index 0 (diagonal) holds r
  std::vector<ClassId> edge_classes;
  std::vector<ClassId> diagonal_classes;
  bool parameters_match = false;  ///< v, b, r, k against the closed forms
  bool lambda_trichotomy = false; ///< lambda is 4 on edges, 1 on diagonals, 0 elsewhere
  bool classes_pure = false;      ///< each class is all edges, all diagonals or neither
  bool m_bound = false;           ///< m >= ceil(q / 8)
  bool incidence_identities = false; ///< v r = b k and sum lambda_i c_i = r (k - 1)

  bool pass() const {
    return parameters_match && lambda_trichotomy && classes_pure && m_bound && incidence_identities;
  }
};

/// Throws NotApplicable for q = 5 and NotAPBIBD if lambda is not constant
/// on some class.
PBIBDReport pbibd_report(const Cellulation &cell, const AssociationScheme &scheme);

} // namespace hyperblock
