#include "hyperblock/cusplink.hpp"

#include "hyperblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace hyperblock {

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x)
      x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::size_t components() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i)
      n += find(i) == i;
    return n;
  }

private:
  std::vector<std::size_t> parent_;
};

} // namespace

int link_level(const ResidueField &field, FieldElement z) {
  const GaussianInt v = field.lift(z) * conj(field.generator());
  const std::int64_t q = field.order();
  return static_cast<int>(((v.im % q) + q) % q);
}

TorusLink cusp_link(const Cellulation &cell, CuspId x) {
  const ResidueField &f = cell.field();
  const Psl2 &group = cell.group();
  const auto q = static_cast<std::size_t>(f.order());
  const FieldElement one = f.one();
  const FieldElement i = f.sqrt_minus_one();

  // neighbors (z, 1) of the cusp at infinity carry label z
  std::vector<int> label_of(cell.v(), -1);
  std::vector<CuspId> cusp_of_label(q);
  for (const FieldElement z : f.elements()) {
    const CuspId id = cell.cusps.id(group.cusp(z, one));
    label_of[id] = f.index(z);
    cusp_of_label[static_cast<std::size_t>(f.index(z))] = id;
  }
  const auto fail = [&](const std::string &why) {
    return Error(ErrorCode::LinkNotTorus, "cusp " + std::to_string(x) + ": " + why);
  };

  const ProjMatrix &t = cell.to_infinity[x];
  TorusLink link;
  link.cusp = x;
  link.neighbor.assign(q, UINT32_MAX);
  link.squares_at_vertex.assign(q, 0);

  for (const Block &block : cell.blocks) {
    if (std::find(block.verts.begin(), block.verts.end(), x) == block.verts.end())
      continue;
    CuspId antipode = x;
    for (const auto &[a, b] : block.pairing)
      if (a == x || b == x)
        antipode = a == x ? b : a;

    std::vector<FieldElement> corner;
    for (const CuspId y : block.verts) {
      if (y == x || y == antipode)
        continue;
      const int label = label_of[cell.cusps.id(group.act(t, cell.cusps[y]))];
      if (label < 0)
        throw fail("block vertex is not adjacent to the cusp");
      auto &slot = link.neighbor[static_cast<std::size_t>(label)];
      if (slot != UINT32_MAX && slot != y)
        throw fail("two neighbors share a label");
      slot = y;
      corner.push_back(f.element(label));
    }
    std::sort(corner.begin(), corner.end());

    // find the base corner z with {z, z+1, z+i, z+1+i} equal to the corner set
    std::optional<FieldElement> base;
    for (const FieldElement z : corner) {
      std::vector<FieldElement> square{z, f.add(z, one), f.add(z, i), f.add(f.add(z, one), i)};
      std::sort(square.begin(), square.end());
      if (square == corner)
        base = z;
    }
    if (!base)
      throw fail("block around the cusp is not a unit square");
    const Block moved = cell.act(t, block);
    const auto id = [&](FieldElement z) { return cusp_of_label[static_cast<std::size_t>(f.index(z))]; };
    if (!moved.is_diagonal(id(*base), id(f.add(f.add(*base, one), i))) ||
        !moved.is_diagonal(id(f.add(*base, one)), id(f.add(*base, i))))
      throw fail("square diagonals disagree with the block pairing");
    link.squares.push_back(*base);
    for (const FieldElement z : corner)
      ++link.squares_at_vertex[static_cast<std::size_t>(f.index(z))];
  }
  std::sort(link.squares.begin(), link.squares.end());
  if (link.squares.size() != q ||
      std::adjacent_find(link.squares.begin(), link.squares.end()) != link.squares.end())
    throw fail("expected " + std::to_string(q) + " distinct squares");

  for (std::size_t k = 0; k < q; ++k)
    if (link.neighbor[k] != UINT32_MAX)
      link.labels.push_back(f.element(static_cast<int>(k)));
  std::sort(link.labels.begin(), link.labels.end());
  if (link.labels.size() != q)
    throw fail("link has " + std::to_string(link.labels.size()) + " vertices");

  std::map<std::pair<int, int>, int> side_count;
  UnionFind components(q);
  for (const FieldElement z : link.squares) {
    const std::array<FieldElement, 4> ring{z, f.add(z, one), f.add(f.add(z, one), i), f.add(z, i)};
    for (std::size_t k = 0; k < 4; ++k) {
      const int a = f.index(ring[k]);
      const int b = f.index(ring[(k + 1) % 4]);
      ++side_count[{std::min(a, b), std::max(a, b)}];
      components.unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
  }
  link.sides = side_count.size();
  if (!std::all_of(side_count.begin(), side_count.end(), [](const auto &kv) { return kv.second == 2; }))
    throw fail("a side does not lie in exactly two squares");
  if (components.components() != 1)
    throw fail("link is disconnected");
  link.euler = static_cast<long>(q) - static_cast<long>(link.sides) + static_cast<long>(q);
  if (link.euler != 0 || link.sides != 2 * q)
    throw fail("Euler characteristic " + std::to_string(link.euler));

  link.level.resize(q);
  for (std::size_t k = 0; k < q; ++k)
    link.level[k] = link_level(f, f.element(static_cast<int>(k)));
  return link;
}

int Banding::band_of_level(int level) const {
  if (level < sizes[0])
    return 0;
  if (level < sizes[0] + sizes[1])
    return 1;
  return 2;
}

Rational Banding::cut(int j) const {
  const int offset = j == 0 ? 0 : j == 1 ? sizes[0] : sizes[0] + sizes[1];
  return Rational(2 * offset - 1, 2);
}

Banding band_partition(const ResidueField &field, std::optional<std::array<int, 3>> sizes) {
  const int q = field.order();
  Banding out;
  if (sizes) {
    out.sizes = *sizes;
  } else {
    const int k1 = (q + 2) / 3;
    const int k2 = (q - k1 + 1) / 2;
    out.sizes = {k1, k2, q - k1 - k2};
  }
  const auto &s = out.sizes;
  if (s[0] < 1 || s[1] < 1 || s[2] < 1 || s[0] + s[1] + s[2] != q)
    throw Error(ErrorCode::BadSizes, "band sizes must be positive and sum to q = " + std::to_string(q));
  std::array<bool, 3> occupied{};
  for (const FieldElement z : field.elements())
    occupied[static_cast<std::size_t>(out.band_of_level(link_level(field, z)))] = true;
  if (!occupied[0] || !occupied[1] || !occupied[2])
    throw Error(ErrorCode::BadSizes, "a band contains no link vertex");
  return out;
}

SurfaceCheck check_surface(const PolygonComplex &c) {
  SurfaceCheck out;
  out.vertices = c.num_vertices;
  out.edges = c.num_edges;
  out.faces = c.faces.size();
  out.euler = static_cast<long>(out.vertices) - static_cast<long>(out.edges) +
              static_cast<long>(out.faces);

  std::vector<int> edge_faces(c.num_edges, 0);
  UnionFind faces(c.faces.size());
  std::vector<std::size_t> first_face(c.num_edges, SIZE_MAX);
  // corners at each vertex: arcs between the two sides meeting there
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> corners(c.num_vertices);
  for (std::size_t fi = 0; fi < c.faces.size(); ++fi) {
    const auto &vs = c.faces[fi];
    const auto &es = c.face_edges[fi];
    const std::size_t n = vs.size();
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint32_t e = es[k];
      ++edge_faces[e];
      if (first_face[e] == SIZE_MAX)
        first_face[e] = fi;
      else
        faces.unite(first_face[e], fi);
      corners[vs[k]].emplace_back(es[(k + n - 1) % n], e);
    }
  }
  out.every_edge_two_faces =
      std::all_of(edge_faces.begin(), edge_faces.end(), [](int n) { return n == 2; });
  out.connected = !c.faces.empty() && faces.components() == 1;

  out.vertex_links_cycles = true;
  for (std::size_t x = 0; x < c.num_vertices && out.vertex_links_cycles; ++x) {
    const auto &arcs = corners[x];
    if (arcs.empty()) {
      out.vertex_links_cycles = false;
      break;
    }
    std::map<std::uint32_t, std::size_t> local;
    for (const auto &[a, b] : arcs) {
      local.emplace(a, local.size());
      local.emplace(b, local.size());
    }
    std::vector<int> degree(local.size(), 0);
    UnionFind link(local.size());
    for (const auto &[a, b] : arcs) {
      ++degree[local[a]];
      ++degree[local[b]];
      link.unite(local[a], local[b]);
    }
    out.vertex_links_cycles = arcs.size() == local.size() && link.components() == 1 &&
                              std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
  }
  return out;
}

bool SplitLinks::pass() const {
  for (std::size_t j = 0; j < 3; ++j)
    if (!checks[j].sphere() || !cuts[j].single_cycle)
      return false;
  return areas_tile && sides_consistent && face_count_identity;
}

namespace {

// The flat torus C / (pi Z[i]) with transverse coordinate T(w) = Im(w conj(pi)).
class FlatTorus {
public:
  explicit FlatTorus(const ResidueField &field)
      : q_(field.order()), a_(field.generator().re), b_(field.generator().im) {}

  Rational transverse(const Point &p) const { return Rational(a_) * p.y - Rational(b_) * p.x; }

  Point reduce(const Point &p) const {
    const Rational alpha = (p.x * Rational(a_) + p.y * Rational(b_)) / Rational(q_);
    const Rational beta = transverse(p) / Rational(q_);
    const Rational s(alpha.floor());
    const Rational t(beta.floor());
    // subtract s * pi + t * i pi
    return {p.x - s * Rational(a_) + t * Rational(b_), p.y - s * Rational(b_) - t * Rational(a_)};
  }

  int q() const { return q_; }

private:
  std::int64_t q_, a_, b_;
};

struct SegmentKey {
  Point start;
  Point delta;
  friend auto operator<=>(const SegmentKey &, const SegmentKey &) = default;
};

SegmentKey segment_key(const FlatTorus &torus, const Point &p, const Point &q) {
  const SegmentKey forward{torus.reduce(p), q - p};
  const SegmentKey backward{torus.reduce(q), p - q};
  return std::min(forward, backward);
}

// Keeps the part of `poly` where sign * (T - level) >= 0.
std::vector<Point> clip(const FlatTorus &torus, const std::vector<Point> &poly, const Rational &level,
                        int sign) {
  std::vector<Point> out;
  const auto side = [&](const Point &p) {
    const Rational d = torus.transverse(p) - level;
    return sign > 0 ? d : -d;
  };
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point &p = poly[k];
    const Point &r = poly[(k + 1) % n];
    const Rational sp = side(p);
    const Rational sr = side(r);
    if (sp >= Rational(0))
      out.push_back(p);
    if ((sp > Rational(0) && sr < Rational(0)) || (sp < Rational(0) && sr > Rational(0))) {
      const Rational t = sp / (sp - sr);
      out.push_back({p.x + t * (r.x - p.x), p.y + t * (r.y - p.y)});
    }
  }
  return out;
}

Rational twice_area(const std::vector<Point> &poly) {
  Rational sum;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Point &p = poly[k];
    const Point &r = poly[(k + 1) % poly.size()];
    sum = sum + p.x * r.y - r.x * p.y;
  }
  return sum;
}

class ComplexBuilder {
public:
  // ids 0 and 1 are the two cone apexes
  static constexpr std::uint32_t kLowerApex = 0, kUpperApex = 1;

  explicit ComplexBuilder(const FlatTorus &torus) : torus_(torus) {}

  std::uint32_t vertex(const Point &p) {
    return vertices_.emplace(torus_.reduce(p), static_cast<std::uint32_t>(vertices_.size() + 2)).first->second;
  }
  std::uint32_t segment(const Point &p, const Point &q) {
    return intern(segment_key(torus_, p, q));
  }
  // apex spokes live at points outside the reduced domain, so they never clash with segments
  std::uint32_t spoke(std::uint32_t apex, std::uint32_t v) {
    return intern(SegmentKey{Point{Rational(-1 - static_cast<std::int64_t>(apex)), Rational(0)},
                             Point{Rational(v), Rational(0)}});
  }
  void add_face(std::vector<std::uint32_t> verts, std::vector<std::uint32_t> edges) {
    complex_.faces.push_back(std::move(verts));
    complex_.face_edges.push_back(std::move(edges));
  }
  PolygonComplex finish() {
    complex_.num_vertices = vertices_.size() + 2;
    complex_.num_edges = edges_.size();
    return std::move(complex_);
  }

private:
  std::uint32_t intern(const SegmentKey &key) {
    return edges_.emplace(key, static_cast<std::uint32_t>(edges_.size())).first->second;
  }

  const FlatTorus &torus_;
  std::map<Point, std::uint32_t> vertices_;
  std::map<SegmentKey, std::uint32_t> edges_;
  PolygonComplex complex_;
};

} // namespace

SplitLinks split_links(const ResidueField &field, const TorusLink &link, const Banding &banding) {
  const FlatTorus torus(field);
  const std::int64_t q = field.order();
  const Rational rq(q);
  const std::array<Rational, 3> cuts{banding.cut(0), banding.cut(1), banding.cut(2)};

  SplitLinks out;
  std::array<ComplexBuilder, 3> builders{ComplexBuilder(torus), ComplexBuilder(torus),
                                         ComplexBuilder(torus)};
  std::array<std::set<SegmentKey>, 3> cut_segments;
  std::map<SegmentKey, std::set<std::size_t>> ordinary_sides;
  out.areas_tile = true;

  // cones are attached after all cylinder vertices are known
  struct Cone {
    std::size_t band;
    std::uint32_t apex;
    Point p, r;
  };
  std::vector<Cone> cones;

  for (const FieldElement z : link.squares) {
    const GaussianInt lift = field.lift(z);
    const Point z0{Rational(lift.re), Rational(lift.im)};
    const std::vector<Point> square{z0, z0 + Point{Rational(1), Rational(0)},
                                    z0 + Point{Rational(1), Rational(1)},
                                    z0 + Point{Rational(0), Rational(1)}};
    Rational lo = torus.transverse(square[0]), hi = lo;
    for (const Point &p : square) {
      lo = std::min(lo, torus.transverse(p));
      hi = std::max(hi, torus.transverse(p));
    }
    // cut levels strictly inside the square
    std::vector<std::pair<Rational, int>> levels;
    for (int j = 0; j < 3; ++j) {
      const std::int64_t first = ((lo - cuts[j]) / rq).floor();
      for (std::int64_t n = first; cuts[j] + Rational(n) * rq < hi; ++n) {
        const Rational level = cuts[j] + Rational(n) * rq;
        if (level > lo)
          levels.emplace_back(level, j);
      }
    }
    std::sort(levels.begin(), levels.end());

    Rational square_area;
    for (std::size_t k = 0; k <= levels.size(); ++k) {
      const bool has_floor = k > 0;
      const bool has_ceiling = k < levels.size();
      std::vector<Point> piece = square;
      if (has_floor)
        piece = clip(torus, piece, levels[k - 1].first, +1);
      if (has_ceiling)
        piece = clip(torus, piece, levels[k].first, -1);
      const Rational bottom = has_floor ? levels[k - 1].first : lo;
      const Rational top = has_ceiling ? levels[k].first : hi;
      const Rational mid = (bottom + top) / Rational(2);
      // reduce into [-1/2, q - 1/2) and read off the band
      const Rational shifted = mid - rq * Rational(((mid + Rational(1, 2)) / rq).floor());
      const std::size_t band = static_cast<std::size_t>(
          banding.band_of_level(static_cast<int>((shifted + Rational(1, 2)).floor())));

      square_area = square_area + twice_area(piece);
      ++out.pieces;
      ++out.pieces_per_band[band];
      ComplexBuilder &builder = builders[band];
      std::vector<std::uint32_t> verts, edges;
      for (std::size_t c = 0; c < piece.size(); ++c) {
        const Point &p = piece[c];
        const Point &r = piece[(c + 1) % piece.size()];
        verts.push_back(builder.vertex(p));
        edges.push_back(builder.segment(p, r));
        const Rational tp = torus.transverse(p);
        const bool on_floor = has_floor && tp == bottom && torus.transverse(r) == bottom;
        const bool on_ceiling = has_ceiling && tp == top && torus.transverse(r) == top;
        if (on_floor || on_ceiling) {
          const int j = on_floor ? levels[k - 1].second : levels[k].second;
          cut_segments[static_cast<std::size_t>(j)].insert(segment_key(torus, p, r));
          cones.push_back({band, on_floor ? ComplexBuilder::kLowerApex : ComplexBuilder::kUpperApex, p, r});
        } else {
          ordinary_sides[segment_key(torus, p, r)].insert(band);
        }
      }
      builder.add_face(std::move(verts), std::move(edges));
    }
    if (square_area != Rational(2))
      out.areas_tile = false;
  }

  for (const Cone &c : cones) {
    ComplexBuilder &builder = builders[c.band];
    const std::uint32_t vp = builder.vertex(c.p);
    const std::uint32_t vr = builder.vertex(c.r);
    builder.add_face({c.apex, vp, vr},
                     {builder.spoke(c.apex, vp), builder.segment(c.p, c.r), builder.spoke(c.apex, vr)});
  }

  std::size_t faces_total = 0;
  for (std::size_t x = 0; x < 3; ++x) {
    out.complexes[x] = builders[x].finish();
    out.checks[x] = check_surface(out.complexes[x]);
    faces_total += out.checks[x].faces;
  }

  std::size_t cut_total = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    const auto &segs = cut_segments[j];
    out.cuts[j].segments = segs.size();
    cut_total += segs.size();
    std::map<Point, std::vector<Point>> adj;
    for (const SegmentKey &s : segs) {
      const Point a = s.start;
      const Point b = torus.reduce(s.start + s.delta);
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    std::map<Point, std::size_t> ids;
    for (const auto &kv : adj)
      ids.emplace(kv.first, ids.size());
    UnionFind uf(ids.size());
    bool degrees_ok = !segs.empty();
    for (const auto &[p, nbrs] : adj) {
      degrees_ok = degrees_ok && nbrs.size() == 2;
      for (const Point &r : nbrs)
        uf.unite(ids[p], ids[r]);
    }
    out.cuts[j].single_cycle = degrees_ok && uf.components() == 1 && segs.size() == ids.size();
  }

  out.face_count_identity = faces_total == out.pieces + 2 * cut_total;
  Rational covered;
  out.sides_consistent = true;
  for (const auto &[key, bands] : ordinary_sides) {
    out.sides_consistent = out.sides_consistent && bands.size() == 1;
    covered = covered + key.delta.x.abs() + key.delta.y.abs();
  }
  out.sides_consistent = out.sides_consistent && covered == Rational(2 * q);

  static constexpr std::array<char, 3> names{'a', 'b', 'c'};
  for (std::size_t x = 0; x < 3; ++x)
    if (!out.checks[x].sphere())
      throw Error(ErrorCode::NotASphere,
                  std::string("link of ") + names[x] + " has Euler characteristic " +
                      std::to_string(out.checks[x].euler) +
                      (out.checks[x].closed_surface() ? "" : " and is not a closed surface"));
  for (std::size_t j = 0; j < 3; ++j)
    if (!out.cuts[j].single_cycle)
      throw Error(ErrorCode::NotACircle, "cut " + std::to_string(j) + " is not a single circle");
  return out;
}

ManifoldSummary manifold_summary(const Cellulation &cell, const Banding &banding) {
  ManifoldSummary out;
  out.cusps = cell.v();
  out.n = 3 * out.cusps;
  out.blocks = cell.blocks.size();
  out.log3_choices = out.blocks;
  out.ratio = std::pow(static_cast<double>(out.n), 1.5) / static_cast<double>(out.blocks);
  out.bands = banding.sizes;
  return out;
}

} // namespace hyperblock
