#pragma once

#include "hyperblock/arith.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace hyperblock {

/// Element of PSL2(F_q): the lexicographically smaller of {M, -M}.
struct ProjMatrix {
  FieldElement a, b, c, d;

  friend constexpr auto operator<=>(const ProjMatrix &, const ProjMatrix &) = default;
};

/// 3D cusps are vectors modulo {+-1, +-i}; 2D cusps modulo {+-1}.
enum class CuspMode : std::uint8_t { Dim3, Dim2 };

/// Nonzero column vector (u, w) modulo the unit group of its mode, stored
/// as the lexicographically least unit multiple. (1, 0) is the cusp at
/// infinity; a rational point z corresponds to (z, 1).
struct Cusp {
  FieldElement u, w;
  CuspMode mode = CuspMode::Dim3;

  friend constexpr auto operator<=>(const Cusp &, const Cusp &) = default;
};

/// PSL2 over a residue field together with its action on cusps.
class Psl2 {
public:
  /// Dim3 requires a Gaussian (split or inert) field.
  Psl2(ResidueField field, CuspMode mode);

  const ResidueField &field() const noexcept { return field_; }
  CuspMode mode() const noexcept { return mode_; }
  const std::vector<FieldElement> &units() const noexcept { return units_; }

  /// Validates ad - bc = 1 (InvalidMatrix otherwise) and canonicalizes.
  ProjMatrix make(FieldElement a, FieldElement b, FieldElement c, FieldElement d) const;
  /// Reduces a Gaussian-integer matrix of determinant 1 entrywise.
  ProjMatrix reduce(GaussianInt a, GaussianInt b, GaussianInt c, GaussianInt d) const;
  ProjMatrix canonical(const ProjMatrix &m) const;
  ProjMatrix identity() const;
  ProjMatrix compose(const ProjMatrix &g, const ProjMatrix &h) const;
  ProjMatrix invert(const ProjMatrix &g) const;

  /// Canonical cusp of a nonzero vector; throws ZeroVector.
  Cusp cusp(FieldElement u, FieldElement w) const;
  /// Cusp of num/den: removes the Gaussian gcd, then reduces. Throws
  /// BothZero for (0, 0) and ZeroVector if both reduce to zero.
  Cusp cusp_from_rational(GaussianInt num, GaussianInt den) const;
  Cusp infinity() const { return cusp(field_.one(), field_.zero()); }

  /// Throws ModeMismatch if x belongs to the other mode.
  Cusp act(const ProjMatrix &g, const Cusp &x) const;

  /// All cusps, canonically sorted.
  std::vector<Cusp> all_cusps() const;
  std::size_t cusp_count() const noexcept;

  /// 64-bit injective key of a canonical matrix.
  std::uint64_t key(const ProjMatrix &m) const noexcept;

private:
  ResidueField field_;
  CuspMode mode_;
  std::vector<FieldElement> units_;
};

/// Sorted cusp list with O(1) lookup.
class CuspIndex {
public:
  explicit CuspIndex(const Psl2 &group);

  const std::vector<Cusp> &cusps() const noexcept { return cusps_; }
  std::size_t size() const noexcept { return cusps_.size(); }
  const Cusp &operator[](std::uint32_t id) const { return cusps_[id]; }
  std::uint32_t id(const Cusp &x) const;

private:
  ResidueField field_;
  std::vector<Cusp> cusps_;
  std::vector<std::uint32_t> lookup_;
};

inline constexpr std::size_t kDefaultGroupCap = 2'000'000;

/// Every element of PSL2(F_q), canonically sorted, with index lookup.
class GroupTable {
public:
  GroupTable(Psl2 group, std::vector<ProjMatrix> elements);

  const Psl2 &group() const noexcept { return group_; }
  const std::vector<ProjMatrix> &elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const ProjMatrix &operator[](std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const ProjMatrix &m) const;
  bool contains(const ProjMatrix &m) const { return index_of(m).has_value(); }

private:
  Psl2 group_;
  std::vector<ProjMatrix> elements_;
  std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

/// Direct parameterization of SL2, folded by +-1. Throws CapExceeded when
/// q(q^2-1)/2 exceeds `cap`.
GroupTable enumerate_group(const Psl2 &group, std::size_t cap = kDefaultGroupCap);

/// Point stabilizer by filtering the table; size 2q in 3D mode, q in 2D.
std::vector<ProjMatrix> cusp_stabilizer(const GroupTable &table, const Cusp &x);

/// For every cusp y, an element t[y] with t[y] * y = base.
std::vector<ProjMatrix> transversal_to(const GroupTable &table, const CuspIndex &cusps,
                                       std::uint32_t base);

} // namespace hyperblock
