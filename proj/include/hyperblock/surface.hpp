#pragma once

#include "hyperblock/cellulation.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace hyperblock {

/// A closed triangulated surface. For S_q, vertices are 2D cusps and
/// `base_orientation` is the cyclic order (inf, 0, 1) of the base triangle.
struct SurfaceComplex {
  int q = 0;
  std::size_t num_vertices = 0;
  std::vector<Cusp> vertices;
  std::vector<Triangle> triangles; ///< sorted triples, sorted list
  std::size_t base_triangle = 0;
  Triangle base_orientation{};     ///< a cyclic order of triangles[base_triangle]
  std::shared_ptr<const GroupTable> group;

  std::vector<CuspPair> edges() const;
};

/// S_q: cusps of PSL2(F_q) in 2D mode and the orbit of the triangle
/// {inf, 0, 1}. Throws InadmissibleOrder unless q is an odd prime.
SurfaceComplex build_surface(int q, std::size_t cap = kDefaultGroupCap);

struct SurfaceReport {
  std::size_t v = 0, e = 0, t = 0;
  long euler = 0;
  bool distinct_vertices = false;
  bool no_duplicate_triangles = false;
  bool edges_in_two_triangles = false;
  bool links_are_q_cycles = false;
  bool counts_match = false; ///< v, e, t against the closed forms in q
  bool connected = false;
  bool regular = false;      ///< edge graph is q-regular
  bool orientable = false;
  /// Coherent cyclic order per triangle, propagated from the base triangle.
  std::vector<Triangle> orientation;

  bool simplicial() const {
    return distinct_vertices && no_duplicate_triangles && edges_in_two_triangles;
  }
  bool pass() const {
    return simplicial() && links_are_q_cycles && counts_match && connected && regular && orientable;
  }
};

SurfaceReport verify_surface(const SurfaceComplex &s);

/// (2 - chi) / 2. Throws NotClosedSurface unless `s` verifies as a
/// closed orientable connected surface.
long genus(const SurfaceComplex &s);

struct FlagReport {
  std::size_t flags = 0;              ///< 3t oriented flags
  std::size_t orbit_size = 0;          ///< orbit of the base flag
  bool orientation_preserved = false;  ///< every group image of a flag is a flag
  bool transitive = false;
};

/// Orbit of the oriented flag (inf, {inf, 0}, base triangle) under the group.
FlagReport verify_flag_transitive(const SurfaceComplex &s, const GroupTable &table);

/// Elements fixing the base triangle setwise.
std::vector<ProjMatrix> triangle_stabilizer(const SurfaceComplex &s, const GroupTable &table);

} // namespace hyperblock
