#include "hyperblock/surface.hpp"

#include "hyperblock/error.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace hyperblock {

namespace {

Triangle sorted(Triangle t) {
  std::sort(t.begin(), t.end());
  return t;
}

// Cyclic rotation starting at the smallest vertex.
Triangle rotate_min_first(Triangle t) {
  const auto it = std::min_element(t.begin(), t.end());
  std::rotate(t.begin(), it, t.end());
  return t;
}

} // namespace

std::vector<CuspPair> SurfaceComplex::edges() const {
  std::set<CuspPair> out;
  for (const Triangle &t : triangles) {
    out.insert(make_pair_sorted(t[0], t[1]));
    out.insert(make_pair_sorted(t[1], t[2]));
    out.insert(make_pair_sorted(t[0], t[2]));
  }
  return {out.begin(), out.end()};
}

SurfaceComplex build_surface(int q, std::size_t cap) {
  const Psl2 group(ResidueField::prime(q), CuspMode::Dim2);
  auto table = std::make_shared<const GroupTable>(enumerate_group(group, cap));
  const CuspIndex cusps(group);

  SurfaceComplex s;
  s.q = q;
  s.num_vertices = cusps.size();
  s.vertices = cusps.cusps();
  s.group = table;

  const Triangle base{cusps.id(group.cusp_from_rational({1, 0}, {0, 0})),
                      cusps.id(group.cusp_from_rational({0, 0}, {1, 0})),
                      cusps.id(group.cusp_from_rational({1, 0}, {1, 0}))};
  std::set<Triangle> seen;
  for (const ProjMatrix &g : table->elements()) {
    Triangle image{};
    for (std::size_t i = 0; i < 3; ++i)
      image[i] = cusps.id(group.act(g, cusps[base[i]]));
    seen.insert(sorted(image));
  }
  s.triangles.assign(seen.begin(), seen.end());
  const auto it = std::lower_bound(s.triangles.begin(), s.triangles.end(), sorted(base));
  s.base_triangle = static_cast<std::size_t>(it - s.triangles.begin());
  s.base_orientation = base;
  return s;
}

SurfaceReport verify_surface(const SurfaceComplex &s) {
  SurfaceReport r;
  r.v = s.num_vertices;
  r.t = s.triangles.size();

  r.distinct_vertices = std::all_of(s.triangles.begin(), s.triangles.end(), [&](const Triangle &t) {
    const Triangle u = sorted(t);
    return u[0] != u[1] && u[1] != u[2] && u[2] < s.num_vertices;
  });
  {
    std::set<Triangle> unique;
    for (const Triangle &t : s.triangles)
      unique.insert(sorted(t));
    r.no_duplicate_triangles = unique.size() == s.triangles.size();
  }

  std::map<CuspPair, std::vector<std::size_t>> edge_faces;
  for (std::size_t i = 0; i < s.triangles.size(); ++i) {
    const Triangle &t = s.triangles[i];
    edge_faces[make_pair_sorted(t[0], t[1])].push_back(i);
    edge_faces[make_pair_sorted(t[1], t[2])].push_back(i);
    edge_faces[make_pair_sorted(t[0], t[2])].push_back(i);
  }
  r.e = edge_faces.size();
  r.edges_in_two_triangles = std::all_of(edge_faces.begin(), edge_faces.end(),
                                         [](const auto &kv) { return kv.second.size() == 2; });
  r.euler = static_cast<long>(r.v) - static_cast<long>(r.e) + static_cast<long>(r.t);

  // vertex links: the opposite edges of the triangles at x must form one q-cycle
  std::vector<std::vector<CuspPair>> link(s.num_vertices);
  for (const Triangle &t : s.triangles)
    for (std::size_t i = 0; i < 3; ++i)
      if (t[i] < s.num_vertices)
        link[t[i]].push_back(make_pair_sorted(t[(i + 1) % 3], t[(i + 2) % 3]));
  r.links_are_q_cycles = true;
  for (std::size_t x = 0; x < s.num_vertices && r.links_are_q_cycles; ++x) {
    const auto &segs = link[x];
    std::map<CuspId, std::vector<CuspId>> adj;
    for (const auto &[a, b] : segs) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    bool ok = segs.size() == static_cast<std::size_t>(s.q) && adj.size() == segs.size();
    for (const auto &[node, nbrs] : adj)
      ok = ok && nbrs.size() == 2;
    if (ok) {
      // walk the cycle
      CuspId prev = adj.begin()->first;
      CuspId cur = adj.begin()->second[0];
      std::size_t length = 1;
      while (cur != adj.begin()->first && length <= segs.size()) {
        const auto &n = adj[cur];
        const CuspId next = n[0] == prev ? n[1] : n[0];
        prev = cur;
        cur = next;
        ++length;
      }
      ok = length == segs.size();
    }
    r.links_are_q_cycles = ok;
  }

  const auto q = static_cast<std::size_t>(s.q);
  r.counts_match = q > 0 && r.v == (q * q - 1) / 2 && r.e == q * (q * q - 1) / 4 &&
                   r.t == q * (q * q - 1) / 6;

  std::vector<std::size_t> degree(s.num_vertices, 0);
  std::vector<std::vector<CuspId>> nbrs(s.num_vertices);
  for (const auto &[e, faces] : edge_faces) {
    if (e.second >= s.num_vertices)
      continue;
    ++degree[e.first];
    ++degree[e.second];
    nbrs[e.first].push_back(e.second);
    nbrs[e.second].push_back(e.first);
  }
  r.regular = std::all_of(degree.begin(), degree.end(), [&](std::size_t d) { return d == q; });
  {
    std::vector<bool> reached(s.num_vertices, false);
    std::queue<CuspId> todo;
    if (s.num_vertices > 0) {
      todo.push(0);
      reached[0] = true;
    }
    std::size_t count = todo.size();
    while (!todo.empty()) {
      const CuspId x = todo.front();
      todo.pop();
      for (const CuspId y : nbrs[x])
        if (!reached[y]) {
          reached[y] = true;
          ++count;
          todo.push(y);
        }
    }
    r.connected = count == s.num_vertices;
  }

  // orientation propagation across shared edges
  r.orientable = r.edges_in_two_triangles && !s.triangles.empty() &&
                 s.base_triangle < s.triangles.size() &&
                 sorted(s.base_orientation) == sorted(s.triangles[s.base_triangle]);
  if (r.orientable) {
    std::vector<Triangle> orient(s.triangles.size());
    std::vector<bool> done(s.triangles.size(), false);
    orient[s.base_triangle] = rotate_min_first(s.base_orientation);
    done[s.base_triangle] = true;
    std::queue<std::size_t> todo;
    todo.push(s.base_triangle);
    std::size_t visited = 1;
    while (!todo.empty() && r.orientable) {
      const std::size_t i = todo.front();
      todo.pop();
      const Triangle &o = orient[i];
      for (std::size_t k = 0; k < 3; ++k) {
        const CuspId a = o[k], b = o[(k + 1) % 3];
        for (const std::size_t j : edge_faces[make_pair_sorted(a, b)]) {
          if (j == i)
            continue;
          // the neighbor must traverse the shared edge as b -> a
          const Triangle &t = s.triangles[j];
          const CuspId c = t[0] != a && t[0] != b ? t[0] : t[1] != a && t[1] != b ? t[1] : t[2];
          const Triangle want = rotate_min_first({b, a, c});
          if (!done[j]) {
            orient[j] = want;
            done[j] = true;
            ++visited;
            todo.push(j);
          } else if (orient[j] != want) {
            r.orientable = false;
          }
        }
      }
    }
    r.orientable = r.orientable && visited == s.triangles.size();
    if (r.orientable)
      r.orientation = std::move(orient);
  }
  return r;
}

long genus(const SurfaceComplex &s) {
  const SurfaceReport r = verify_surface(s);
  if (!r.simplicial() || !r.connected || !r.orientable)
    throw Error(ErrorCode::NotClosedSurface, "not a closed connected orientable surface");
  return (2 - r.euler) / 2;
}

FlagReport verify_flag_transitive(const SurfaceComplex &s, const GroupTable &table) {
  FlagReport out;
  const SurfaceReport r = verify_surface(s);
  if (!r.orientable || s.vertices.size() != s.num_vertices)
    return out;
  const Psl2 &group = table.group();
  const CuspIndex cusps(group);

  // an oriented flag is a directed edge a -> b read along its triangle's orientation
  std::set<CuspPair> flags;
  for (const Triangle &o : r.orientation)
    for (std::size_t k = 0; k < 3; ++k)
      flags.insert({o[k], o[(k + 1) % 3]});
  out.flags = flags.size();

  const CuspPair base{s.base_orientation[0], s.base_orientation[1]};
  std::set<CuspPair> orbit;
  out.orientation_preserved = true;
  for (const ProjMatrix &g : table.elements()) {
    const CuspPair image{cusps.id(group.act(g, s.vertices[base.first])),
                         cusps.id(group.act(g, s.vertices[base.second]))};
    if (!flags.count(image))
      out.orientation_preserved = false;
    orbit.insert(image);
  }
  out.orbit_size = orbit.size();
  out.transitive = out.orientation_preserved && out.orbit_size == out.flags &&
                   out.flags == 3 * s.triangles.size();
  return out;
}

std::vector<ProjMatrix> triangle_stabilizer(const SurfaceComplex &s, const GroupTable &table) {
  const Psl2 &group = table.group();
  const CuspIndex cusps(group);
  const Triangle base = s.triangles[s.base_triangle];
  std::vector<ProjMatrix> out;
  for (const ProjMatrix &g : table.elements()) {
    Triangle image{};
    for (std::size_t i = 0; i < 3; ++i)
      image[i] = cusps.id(group.act(g, s.vertices[base[i]]));
    if (sorted(image) == base)
      out.push_back(g);
  }
  return out;
}

} // namespace hyperblock
