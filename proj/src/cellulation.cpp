#include "hyperblock/cellulation.hpp"

#include "hyperblock/error.hpp"
#include "hyperblock/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>

namespace hyperblock {

CuspPair make_pair_sorted(CuspId a, CuspId b) { return a < b ? CuspPair{a, b} : CuspPair{b, a}; }

Block Block::from_pairing(std::array<CuspPair, 3> pairing) {
  Block out;
  for (auto &p : pairing)
    p = make_pair_sorted(p.first, p.second);
  std::sort(pairing.begin(), pairing.end());
  out.pairing = pairing;
  for (std::size_t i = 0; i < 3; ++i) {
    out.verts[2 * i] = pairing[i].first;
    out.verts[2 * i + 1] = pairing[i].second;
  }
  std::sort(out.verts.begin(), out.verts.end());
  return out;
}

bool Block::has_distinct_vertices() const {
  return std::adjacent_find(verts.begin(), verts.end()) == verts.end();
}

bool Block::is_diagonal(CuspId a, CuspId b) const {
  const CuspPair p = make_pair_sorted(a, b);
  return std::find(pairing.begin(), pairing.end(), p) != pairing.end();
}

std::array<CuspPair, 12> Block::edges() const {
  std::array<CuspPair, 12> out{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      if (!is_diagonal(verts[i], verts[j]) && n < out.size())
        out[n++] = {verts[i], verts[j]};
  return out;
}

std::array<Triangle, 8> Block::triangles() const {
  std::array<Triangle, 8> out{};
  for (unsigned mask = 0; mask < 8; ++mask) {
    Triangle t{};
    for (std::size_t i = 0; i < 3; ++i)
      t[i] = (mask >> i & 1u) ? pairing[i].second : pairing[i].first;
    std::sort(t.begin(), t.end());
    out[mask] = t;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Block Cellulation::act(const ProjMatrix &g, const Block &block) const {
  const Psl2 &grp = group();
  std::array<CuspPair, 3> moved{};
  for (std::size_t i = 0; i < 3; ++i)
    moved[i] = {cusps.id(grp.act(g, cusps[block.pairing[i].first])),
                cusps.id(grp.act(g, cusps[block.pairing[i].second]))};
  return Block::from_pairing(moved);
}

ProjMatrix axis_half_turn(const Psl2 &group) {
  return group.reduce({0, -1}, {-1, 1}, {0, 0}, {0, 1});
}

ProjMatrix face_rotation(const Psl2 &group) { return group.reduce({0, 0}, {1, 0}, {-1, 0}, {1, 0}); }

std::vector<ProjMatrix> octahedral_subgroup(const Psl2 &group) {
  const std::array<ProjMatrix, 2> gens{axis_half_turn(group), face_rotation(group)};
  std::set<ProjMatrix> closure{group.identity()};
  std::vector<ProjMatrix> frontier{group.identity()};
  while (!frontier.empty() && closure.size() <= 12) {
    std::vector<ProjMatrix> next;
    for (const auto &m : frontier)
      for (const auto &g : gens) {
        const ProjMatrix p = group.compose(m, g);
        if (closure.insert(p).second)
          next.push_back(p);
      }
    frontier = std::move(next);
  }
  if (closure.size() != 12)
    throw Error(ErrorCode::ClosureSizeMismatch,
                "octahedral subgroup closure has " + std::to_string(closure.size()) + " elements");
  return {closure.begin(), closure.end()};
}

std::array<Cusp, 6> base_octahedron_cusps(const Psl2 &group) {
  return {
      group.cusp_from_rational({1, 0}, {0, 0}), // inf
      group.cusp_from_rational({0, 0}, {1, 0}), // 0
      group.cusp_from_rational({1, 0}, {1, 0}), // 1
      group.cusp_from_rational({0, 1}, {1, 0}), // i
      group.cusp_from_rational({1, 1}, {1, 0}), // 1+i
      group.cusp_from_rational({1, 1}, {2, 0}), // (1+i)/2 = 1/(1-i)
  };
}

Block base_block(const Psl2 &group, const CuspIndex &cusps) {
  const auto c = base_octahedron_cusps(group);
  std::array<CuspId, 6> id{};
  for (std::size_t i = 0; i < 6; ++i)
    id[i] = cusps.id(c[i]);
  const Block block = Block::from_pairing({{{id[0], id[5]}, {id[1], id[4]}, {id[2], id[3]}}});
  if (!block.has_distinct_vertices())
    throw Error(ErrorCode::DegenerateBlock, "base octahedron has repeated cusps for q = " +
                                                std::to_string(group.field().order()));
  return block;
}

Cellulation build_cellulation(const ResidueField &field, std::size_t cap) {
  if (field.order() < 5 || !field.has_i())
    throw Error(ErrorCode::InadmissibleOrder, "cellulation needs an admissible q >= 5");
  const Psl2 group(field, CuspMode::Dim3);
  auto table = std::make_shared<const GroupTable>(enumerate_group(group, cap));
  Cellulation cell{.table = table, .cusps = CuspIndex(group)};
  const std::size_t v = cell.v();
  const auto q = static_cast<std::size_t>(field.order());
  if (v != (q * q - 1) / 4)
    throw Error(ErrorCode::CountMismatch, "cusp count " + std::to_string(v));
  cell.infinity = cell.cusps.id(group.infinity());
  cell.base = base_block(group, cell.cusps);

  // orbit of the base block; each worker dedups its own chunk first
  const unsigned workers = thread_count();
  std::vector<std::vector<Block>> partial(workers);
  parallel_chunks(table->size(), [&](std::size_t begin, std::size_t end, unsigned w) {
    auto &out = partial[w];
    for (std::size_t i = begin; i < end; ++i)
      out.push_back(cell.act((*table)[i], cell.base));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  });
  for (auto &part : partial)
    cell.blocks.insert(cell.blocks.end(), part.begin(), part.end());
  std::sort(cell.blocks.begin(), cell.blocks.end());
  cell.blocks.erase(std::unique(cell.blocks.begin(), cell.blocks.end()), cell.blocks.end());

  const std::size_t expected_blocks = q * (q * q - 1) / 24;
  if (cell.blocks.size() != expected_blocks)
    throw Error(ErrorCode::CountMismatch, "block count " + std::to_string(cell.blocks.size()) +
                                              ", expected " + std::to_string(expected_blocks));

  cell.membership.assign(v * v, 0);
  cell.edge_incidence.assign(v * v, 0);
  cell.diagonal_incidence.assign(v * v, 0);
  std::map<Triangle, std::uint16_t> triangle_count;
  std::vector<std::size_t> replication(v, 0);
  const auto bump = [&](std::vector<std::uint16_t> &table_ref, CuspId a, CuspId b) {
    ++table_ref[cell.at(a, b)];
    if (a != b)
      ++table_ref[cell.at(b, a)];
  };
  for (const Block &block : cell.blocks) {
    for (std::size_t i = 0; i < 6; ++i) {
      ++replication[block.verts[i]];
      for (std::size_t j = i + 1; j < 6; ++j)
        bump(cell.membership, block.verts[i], block.verts[j]);
    }
    for (const auto &[a, b] : block.edges())
      bump(cell.edge_incidence, a, b);
    for (const auto &[a, b] : block.pairing)
      bump(cell.diagonal_incidence, a, b);
    for (const Triangle &t : block.triangles())
      ++triangle_count[t];
  }
  for (std::size_t x = 0; x < v; ++x)
    if (replication[x] != q)
      throw Error(ErrorCode::CountMismatch, "cusp " + std::to_string(x) + " lies in " +
                                                std::to_string(replication[x]) + " blocks");
  for (CuspId x = 0; x < v; ++x)
    for (CuspId y = x + 1; y < v; ++y) {
      if (cell.edge_incidence[cell.at(x, y)] > 0)
        cell.edges.emplace_back(x, y);
      if (cell.diagonal_incidence[cell.at(x, y)] > 0)
        cell.diagonals.emplace_back(x, y);
    }
  for (const auto &[t, n] : triangle_count) {
    cell.triangles.push_back(t);
    cell.triangle_incidence.push_back(n);
  }
  cell.to_infinity = transversal_to(*table, cell.cusps, cell.infinity);
  return cell;
}

std::vector<ProjMatrix> block_stabilizer(const Cellulation &cell, const Block &block) {
  std::vector<ProjMatrix> out;
  for (const ProjMatrix &g : cell.table->elements())
    if (cell.act(g, block) == block)
      out.push_back(g);
  return out;
}

TilingLemmaReport verify_tiling_lemma(const Cellulation &cell) {
  TilingLemmaReport report;
  report.distinct_vertices = std::all_of(cell.blocks.begin(), cell.blocks.end(),
                                         [](const Block &b) { return b.has_distinct_vertices(); });
  // Around each tiling edge sit exactly four octahedra; a second geometric
  // edge between the same two cusps would double the incidence count.
  report.no_multiple_edges =
      !cell.edges.empty() && std::all_of(cell.edges.begin(), cell.edges.end(), [&](CuspPair e) {
        return cell.edge_incidence[cell.at(e.first, e.second)] == 4;
      });
  report.diagonal_determines_block =
      !cell.diagonals.empty() &&
      std::all_of(cell.diagonals.begin(), cell.diagonals.end(), [&](CuspPair d) {
        return cell.diagonal_incidence[cell.at(d.first, d.second)] == 1;
      });
  report.edges_avoid_diagonals = std::none_of(
      cell.edges.begin(), cell.edges.end(),
      [&](CuspPair e) { return cell.diagonal_incidence[cell.at(e.first, e.second)] > 0; });
  return report;
}

namespace {

enum class CellKind : std::uint8_t { Vertex, Edge, Triangle, Block };

struct CellRef {
  CellKind kind;
  std::uint32_t index;
};

class CellView {
public:
  explicit CellView(const Cellulation &cell) : cell_(cell) {}

  std::vector<CuspId> verts(CellRef c) const {
    switch (c.kind) {
    case CellKind::Vertex: return {c.index};
    case CellKind::Edge: return {cell_.edges[c.index].first, cell_.edges[c.index].second};
    case CellKind::Triangle: {
      const auto &t = cell_.triangles[c.index];
      return {t.begin(), t.end()};
    }
    case CellKind::Block: {
      const auto &b = cell_.blocks[c.index].verts;
      return {b.begin(), b.end()};
    }
    }
    return {};
  }

  // Whether `sub` (a subset of c's vertices) is the vertex set of a face of c.
  bool is_face(CellRef c, const std::vector<CuspId> &sub) const {
    if (sub.size() <= 1)
      return true;
    if (c.kind != CellKind::Block)
      return true; // every subset of a simplex is a face
    const Block &b = cell_.blocks[c.index];
    if (sub.size() == 6)
      return true;
    if (sub.size() > 3)
      return false;
    for (std::size_t i = 0; i < sub.size(); ++i)
      for (std::size_t j = i + 1; j < sub.size(); ++j)
        if (b.is_diagonal(sub[i], sub[j]))
          return false;
    return true;
  }

private:
  const Cellulation &cell_;
};

std::vector<CuspId> intersect(const std::vector<CuspId> &a, const std::vector<CuspId> &b) {
  std::vector<CuspId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

} // namespace

bool blocks_meet_properly(const Block &a, const Block &b) {
  std::vector<CuspId> common;
  std::set_intersection(a.verts.begin(), a.verts.end(), b.verts.begin(), b.verts.end(),
                        std::back_inserter(common));
  if (common.size() <= 1)
    return true;
  if (common.size() == 6)
    return a == b;
  if (common.size() > 3)
    return false;
  for (std::size_t i = 0; i < common.size(); ++i)
    for (std::size_t j = i + 1; j < common.size(); ++j)
      if (a.is_diagonal(common[i], common[j]) || b.is_diagonal(common[i], common[j]))
        return false;
  return true;
}

bool verify_strongly_regular(const Cellulation &cell) {
  if (cell.q() == 5)
    throw Error(ErrorCode::NotApplicable, "strong regularity is only claimed for q > 5");

  // unique vertex sets: blocks pairwise distinct as sets, every triangle
  // in exactly two octahedra, every edge in exactly four
  std::set<std::array<CuspId, 6>> block_sets;
  for (const Block &b : cell.blocks)
    if (!b.has_distinct_vertices() || !block_sets.insert(b.verts).second)
      return false;
  for (const auto n : cell.triangle_incidence)
    if (n != 2)
      return false;
  for (const auto &[a, b] : cell.edges)
    if (cell.edge_incidence[cell.at(a, b)] != 4)
      return false;

  const std::size_t v = cell.v();
  std::vector<std::vector<CellRef>> incident(v);
  for (CuspId x = 0; x < v; ++x)
    incident[x].push_back({CellKind::Vertex, x});
  for (std::uint32_t i = 0; i < cell.edges.size(); ++i) {
    incident[cell.edges[i].first].push_back({CellKind::Edge, i});
    incident[cell.edges[i].second].push_back({CellKind::Edge, i});
  }
  for (std::uint32_t i = 0; i < cell.triangles.size(); ++i)
    for (const CuspId x : cell.triangles[i])
      incident[x].push_back({CellKind::Triangle, i});
  for (std::uint32_t i = 0; i < cell.blocks.size(); ++i)
    for (const CuspId x : cell.blocks[i].verts)
      incident[x].push_back({CellKind::Block, i});

  const CellView view(cell);
  std::atomic<bool> ok{true};
  parallel_chunks(v, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t x = begin; x < end && ok; ++x) {
      const auto &cells = incident[x];
      std::vector<std::vector<CuspId>> sets;
      sets.reserve(cells.size());
      for (const CellRef c : cells)
        sets.push_back(view.verts(c));
      for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
          const auto common = intersect(sets[i], sets[j]);
          // each pair is examined once: at the smallest shared vertex
          if (common.front() != x)
            continue;
          const bool same_block = cells[i].kind == CellKind::Block &&
                                  cells[j].kind == CellKind::Block && common.size() == 6;
          if (same_block || !view.is_face(cells[i], common) || !view.is_face(cells[j], common)) {
            ok.store(false);
            return;
          }
        }
    }
  });
  return ok.load();
}

std::vector<std::array<CuspPair, 3>> one_factorization_k6(const Cellulation &cell) {
  if (cell.q() != 5)
    throw Error(ErrorCode::WrongOrder, "the K6 1-factorization exists only for q = 5");
  if (cell.v() != 6 || cell.blocks.size() != 5)
    throw Error(ErrorCode::CountMismatch, "q = 5 must give 6 cusps and 5 blocks");
  std::vector<std::array<CuspPair, 3>> out;
  std::set<CuspPair> covered;
  for (const Block &b : cell.blocks) {
    std::set<CuspId> touched;
    for (const auto &[x, y] : b.pairing) {
      touched.insert(x);
      touched.insert(y);
      if (!covered.insert({x, y}).second)
        throw Error(ErrorCode::CountMismatch, "two matchings share a pair");
    }
    if (touched.size() != 6)
      throw Error(ErrorCode::CountMismatch, "a diagonal triple is not a perfect matching");
    out.push_back(b.pairing);
  }
  if (covered.size() != 15)
    throw Error(ErrorCode::CountMismatch, "matchings do not cover K6");
  return out;
}

BaseActionSummary base_action_summary(const Cellulation &cell) {
  const auto sub = octahedral_subgroup(cell.group());
  const Block &base = cell.base;
  struct Flag {
    CuspId vertex;
    CuspPair edge;
    auto operator<=>(const Flag &) const = default;
  };
  std::set<CuspId> vertices(base.verts.begin(), base.verts.end());
  const auto edges_arr = base.edges();
  std::set<CuspPair> edges(edges_arr.begin(), edges_arr.end());
  std::set<Flag> flags;
  for (const auto &e : edges) {
    flags.insert({e.first, e});
    flags.insert({e.second, e});
  }
  const auto image = [&](const ProjMatrix &g, CuspId x) {
    return cell.cusps.id(cell.group().act(g, cell.cusps[x]));
  };
  const auto count_orbits = [&](auto items, auto apply) {
    std::size_t orbits = 0;
    while (!items.empty()) {
      const auto seed = *items.begin();
      ++orbits;
      for (const auto &g : sub)
        items.erase(apply(g, seed));
    }
    return orbits;
  };
  BaseActionSummary out;
  out.vertex_orbits = count_orbits(vertices, image);
  out.edge_orbits = count_orbits(edges, [&](const ProjMatrix &g, CuspPair e) {
    return make_pair_sorted(image(g, e.first), image(g, e.second));
  });
  out.flag_orbits = count_orbits(flags, [&](const ProjMatrix &g, const Flag &f) {
    return Flag{image(g, f.vertex), make_pair_sorted(image(g, f.edge.first), image(g, f.edge.second))};
  });
  return out;
}

} // namespace hyperblock
