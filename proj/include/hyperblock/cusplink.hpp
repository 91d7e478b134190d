#pragma once

#include "hyperblock/cellulation.hpp"
#include "hyperblock/rational.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hyperblock {

/// Link of one cusp: a torus tiled by q unit squares, with vertices
/// labelled by residues of Z[i] mod I. Label z stands for the edge from the
/// cusp towards the neighbor that the transversal carries to cusp (z, 1).
struct TorusLink {
  CuspId cusp = 0;
  std::vector<FieldElement> labels;   ///< sorted, q of them
  std::vector<CuspId> neighbor;       ///< indexed by field index of a label
  std::vector<FieldElement> squares;  ///< base corners z of {z, z+1, z+i, z+1+i}, sorted
  std::size_t sides = 0;
  long euler = 0;
  std::vector<int> level;             ///< Im(lift(z) conj(pi)) mod q, by field index
  std::vector<int> squares_at_vertex; ///< by field index
};

/// Reads the link off the blocks around x and checks it is the standard
/// square torus Z[i]/I. Throws LinkNotTorus.
TorusLink cusp_link(const Cellulation &cell, CuspId x);

int link_level(const ResidueField &field, FieldElement z);

/// Three consecutive level intervals [0, k1), [k1, k1+k2), [k1+k2, q).
struct Banding {
  std::array<int, 3> sizes{};

  int band_of_level(int level) const;
  /// Cut levels -1/2, k1 - 1/2, k1 + k2 - 1/2 (cut j sits below band j).
  Rational cut(int j) const;
};

/// Default sizes (ceil(q/3), ceil((q - ceil(q/3))/2), rest). Throws
/// BadSizes unless the sizes are positive, sum to q, and every band holds
/// at least one link vertex level.
Banding band_partition(const ResidueField &field, std::optional<std::array<int, 3>> sizes = std::nullopt);

/// Generic closed 2-complex: polygonal faces with explicit side ids.
struct PolygonComplex {
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  std::vector<std::vector<std::uint32_t>> faces;      ///< cyclic vertex ids
  std::vector<std::vector<std::uint32_t>> face_edges; ///< side k joins corner k and k+1
};

struct SurfaceCheck {
  std::size_t vertices = 0, edges = 0, faces = 0;
  long euler = 0;
  bool every_edge_two_faces = false;
  bool vertex_links_cycles = false;
  bool connected = false;

  bool closed_surface() const { return every_edge_two_faces && vertex_links_cycles && connected; }
  bool sphere() const { return closed_surface() && euler == 2; }
};

SurfaceCheck check_surface(const PolygonComplex &complex);

struct CutCheck {
  std::size_t segments = 0;
  bool single_cycle = false;
};

struct SplitLinks {
  std::array<PolygonComplex, 3> complexes; ///< link of vertex a, b, c
  std::array<SurfaceCheck, 3> checks;
  std::array<CutCheck, 3> cuts;            ///< cut j bounds band j from below
  std::size_t pieces = 0;
  std::array<std::size_t, 3> pieces_per_band{};
  bool areas_tile = false;      ///< piece areas sum to 1 in every square
  bool sides_consistent = false; ///< every square side is covered once, inside one band
  bool face_count_identity = false;

  bool pass() const;
};

/// Cuts the flat torus C/I along three lines parallel to pi and cones off
/// each cylinder's two boundary circles. Throws NotASphere or NotACircle
/// naming the failing piece.
SplitLinks split_links(const ResidueField &field, const TorusLink &link, const Banding &banding);

struct ManifoldSummary {
  std::size_t cusps = 0;
  std::size_t n = 0;          ///< vertices after splitting each cusp into three
  std::size_t blocks = 0;
  std::size_t log3_choices = 0; ///< one independent diagonal choice per octahedron
  double ratio = 0.0;          ///< n^{3/2} / blocks
  std::array<int, 3> bands{};
};

ManifoldSummary manifold_summary(const Cellulation &cell, const Banding &banding);

} // namespace hyperblock
