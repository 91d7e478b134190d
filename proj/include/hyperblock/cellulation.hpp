#pragma once

#include "hyperblock/group.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace hyperblock {

using CuspId = std::uint32_t;
/// Unordered cusp pair stored with first < second.
using CuspPair = std::pair<CuspId, CuspId>;
using Triangle = std::array<CuspId, 3>;

CuspPair make_pair_sorted(CuspId a, CuspId b);

/// An octahedron: six cusps and the three antipodal pairs (diagonals).
struct Block {
  std::array<CuspId, 6> verts{};
  std::array<CuspPair, 3> pairing{};

  /// Canonical block with the given diagonals. Vertices may repeat only in
  /// degenerate input; see has_distinct_vertices.
  static Block from_pairing(std::array<CuspPair, 3> pairing);

  bool has_distinct_vertices() const;
  bool is_diagonal(CuspId a, CuspId b) const;
  /// The 12 vertex pairs that are not diagonals.
  std::array<CuspPair, 12> edges() const;
  /// The 8 transversals of the pairing, each sorted.
  std::array<Triangle, 8> triangles() const;

  friend auto operator<=>(const Block &, const Block &) = default;
};

/// The complex X_q together with the group data it was built from.
struct Cellulation {
  std::shared_ptr<const GroupTable> table;
  CuspIndex cusps;
  CuspId infinity = 0;
  Block base{};
  std::vector<Block> blocks{};
  std::vector<CuspPair> edges{};
  std::vector<CuspPair> diagonals{};
  std::vector<Triangle> triangles{};
  /// Number of blocks containing each triangle as a face, parallel to `triangles`.
  std::vector<std::uint16_t> triangle_incidence{};
  /// v x v symmetric tables: blocks containing {x, y}, blocks in which
  /// {x, y} is an edge, blocks in which {x, y} is a diagonal.
  std::vector<std::uint16_t> membership{};
  std::vector<std::uint16_t> edge_incidence{};
  std::vector<std::uint16_t> diagonal_incidence{};
  /// to_infinity[x] maps cusp x to the cusp at infinity.
  std::vector<ProjMatrix> to_infinity{};

  const Psl2 &group() const { return table->group(); }
  const ResidueField &field() const { return table->group().field(); }
  int q() const { return field().order(); }
  std::size_t v() const { return cusps.size(); }
  std::size_t at(CuspId x, CuspId y) const { return static_cast<std::size_t>(x) * v() + y; }
  /// Image of a block under g.
  Block act(const ProjMatrix &g, const Block &block) const;
};

/// Closure of {psi, g3} with psi = [[-i, i-1], [0, i]] and
/// g3 = [[0, 1], [-1, 1]], reduced into the field. Throws
/// ClosureSizeMismatch unless it has exactly 12 elements.
std::vector<ProjMatrix> octahedral_subgroup(const Psl2 &group);

/// psi = [[-i, i-1], [0, i]] reduced into the field.
ProjMatrix axis_half_turn(const Psl2 &group);
/// g3 = [[0, 1], [-1, 1]], the order-3 rotation z -> 1 / (1 - z).
ProjMatrix face_rotation(const Psl2 &group);

/// The six base cusps inf, 0, 1, i, 1+i, (1+i)/2 in that order.
std::array<Cusp, 6> base_octahedron_cusps(const Psl2 &group);

/// Octahedron over the unit square with apexes inf and (1+i)/2. Throws
/// DegenerateBlock if the six cusps are not distinct.
Block base_block(const Psl2 &group, const CuspIndex &cusps);

/// Orbit of the base block under PSL2(F_q), for admissible q >= 5.
/// Throws CountMismatch if block count, cusp count or replication is off.
Cellulation build_cellulation(const ResidueField &field, std::size_t cap = kDefaultGroupCap);

/// Elements of G fixing `block` setwise (with its pairing).
std::vector<ProjMatrix> block_stabilizer(const Cellulation &cell, const Block &block);

struct TilingLemmaReport {
  bool distinct_vertices = false;      ///< every block has six distinct cusps
  bool no_multiple_edges = false;      ///< each edge pair is an edge of exactly 4 blocks
  bool diagonal_determines_block = false; ///< each diagonal pair is a diagonal of exactly 1 block
  bool edges_avoid_diagonals = false;  ///< no pair is both an edge and a diagonal

  bool all() const {
    return distinct_vertices && no_multiple_edges && diagonal_determines_block &&
           edges_avoid_diagonals;
  }
};

TilingLemmaReport verify_tiling_lemma(const Cellulation &cell);

/// Face-compatible intersection of two blocks viewed as closed cells.
bool blocks_meet_properly(const Block &a, const Block &b);

/// Checks that every cell's vertex set is unique and every pairwise
/// intersection of closed cells is empty or a common face. Throws
/// NotApplicable for q = 5.
bool verify_strongly_regular(const Cellulation &cell);

/// Per-block diagonal pairings for q = 5, checked to be a 1-factorization
/// of K6. Throws WrongOrder if q != 5 and CountMismatch if the check fails.
std::vector<std::array<CuspPair, 3>> one_factorization_k6(const Cellulation &cell);

struct BaseActionSummary {
  std::size_t vertex_orbits = 0;
  std::size_t edge_orbits = 0;
  std::size_t flag_orbits = 0; ///< (vertex, incident edge) flags
};

/// Orbit counts of the order-12 subgroup acting on the base block.
BaseActionSummary base_action_summary(const Cellulation &cell);

} // namespace hyperblock
