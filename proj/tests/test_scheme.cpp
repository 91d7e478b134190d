#include "hyperblock/error.hpp"
#include "hyperblock/scheme.hpp"

#include <doctest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace hyperblock;

namespace {

struct Built {
  Cellulation cell;
  AssociationScheme scheme;
};

const Built &built_for(int q) {
  static std::map<int, Built> cache;
  auto it = cache.find(q);
  if (it == cache.end()) {
    Cellulation cell = build_cellulation(make_field(q));
    AssociationScheme s = build_scheme(cell);
    it = cache.emplace(q, Built{std::move(cell), std::move(s)}).first;
  }
  return it->second;
}

// Orbitals by brute force: union pairs (x, y) ~ (gx, gy) over every g.
std::vector<std::size_t> orbital_oracle(const Cellulation &c) {
  const std::size_t v = c.v();
  std::vector<std::size_t> parent(v * v);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  const Psl2 &g = c.group();
  for (const ProjMatrix &m : c.table->elements()) {
    std::vector<CuspId> image(v);
    for (CuspId x = 0; x < v; ++x)
      image[x] = c.cusps.id(g.act(m, c.cusps[x]));
    for (CuspId x = 0; x < v; ++x)
      for (CuspId y = 0; y < v; ++y)
        parent[find(x * v + y)] = find(image[x] * v + image[y]);
  }
  std::vector<std::size_t> root(v * v);
  for (std::size_t i = 0; i < v * v; ++i)
    root[i] = find(i);
  return root;
}

} // namespace

TEST_CASE("scheme classes are the orbitals") {
  for (int q : {5, 9, 13}) {
    const auto &[cell, s] = built_for(q);
    const auto root = orbital_oracle(cell);
    std::map<std::size_t, std::set<ClassId>> classes_per_orbit;
    std::map<ClassId, std::set<std::size_t>> orbits_per_class;
    for (std::size_t i = 0; i < root.size(); ++i) {
      classes_per_orbit[root[i]].insert(s.class_of[i]);
      orbits_per_class[s.class_of[i]].insert(root[i]);
    }
    CHECK(classes_per_orbit.size() == s.classes());
    for (const auto &[r, cls] : classes_per_orbit)
      CHECK(cls.size() == 1);
    for (const auto &[c, orbs] : orbits_per_class)
      CHECK(orbs.size() == 1);
  }
}

TEST_CASE("partition, diagonal class and valencies") {
  for (int q : {9, 13, 17}) {
    const auto &[cell, s] = built_for(q);
    std::vector<std::size_t> sizes(s.classes(), 0);
    for (CuspId x = 0; x < s.v; ++x)
      for (CuspId y = 0; y < s.v; ++y) {
        ++sizes[s.cls(x, y)];
        CHECK((s.cls(x, y) == 0) == (x == y));
        CHECK(s.cls(y, x) == s.transpose[s.cls(x, y)]);
      }
    for (std::size_t c = 0; c < s.classes(); ++c) {
      CHECK(sizes[c] > 0);
      CHECK(sizes[c] == s.v * s.valency[c]);
    }
    CHECK(std::accumulate(s.valency.begin(), s.valency.end(), std::size_t{0}) == s.v);
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == s.v * s.v);
  }
  CHECK(built_for(13).scheme.v == 42);
}

TEST_CASE("classes are invariant under the group") {
  const auto &[cell, s] = built_for(13);
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<std::size_t> pick_g(0, cell.table->size() - 1);
  std::uniform_int_distribution<CuspId> pick_x(0, static_cast<CuspId>(cell.v() - 1));
  for (int trial = 0; trial < 200; ++trial) {
    const ProjMatrix &g = (*cell.table)[pick_g(rng)];
    const CuspId x = pick_x(rng), y = pick_x(rng);
    const CuspId gx = cell.cusps.id(cell.group().act(g, cell.cusps[x]));
    const CuspId gy = cell.cusps.id(cell.group().act(g, cell.cusps[y]));
    CHECK(s.cls(gx, gy) == s.cls(x, y));
  }
}

TEST_CASE("scheme axioms") {
  for (int q : {5, 9, 13, 17}) {
    const auto &s = built_for(q).scheme;
    const SchemeAxiomReport r = verify_scheme_axioms(s, AxiomMode::Exhaustive);
    CHECK(r.pass());
    const std::size_t n = s.classes();
    // p^0_{ij} is c_i when j is the transpose of i, else 0
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(r.p(0, i, j, n) == (j == s.transpose[i] ? s.valency[i] : 0));
    CHECK(s.m >= static_cast<std::size_t>((q + 7) / 8));
  }
  const SchemeAxiomReport sampled = verify_scheme_axioms(built_for(17).scheme, AxiomMode::Sampled);
  CHECK(sampled.pass());
  CHECK(sampled.mode == AxiomMode::Sampled);
}

TEST_CASE("large q uses sampled axioms") {
  const Cellulation cell = build_cellulation(make_field(49));
  const AssociationScheme s = build_scheme(cell);
  CHECK_THROWS_AS(verify_scheme_axioms(s, AxiomMode::Exhaustive), Error);
  const SchemeAxiomReport a = verify_scheme_axioms(s, AxiomMode::Sampled, kDefaultSeed);
  const SchemeAxiomReport b = verify_scheme_axioms(s, AxiomMode::Sampled, kDefaultSeed);
  CHECK(a.pass());
  CHECK(a.intersection_numbers == b.intersection_numbers);
  CHECK(s.m >= 7);
}

TEST_CASE("PBIBD parameters") {
  for (int q : {9, 13, 17}) {
    const auto &[cell, s] = built_for(q);
    const PBIBDReport p = pbibd_report(cell, s);
    const auto uq = static_cast<std::size_t>(q);
    CHECK(p.pass());
    CHECK(p.v == (uq * uq - 1) / 4);
    CHECK(p.b == uq * (uq * uq - 1) / 24);
    CHECK(p.r == uq);
    CHECK(p.k == 6);
    CHECK(p.v * p.r == p.b * p.k);
    for (std::size_t c = 1; c < p.lambda_by_class.size(); ++c) {
      const int l = p.lambda_by_class[c];
      CHECK((l == 4 || l == 1 || l == 0));
    }
    CHECK_FALSE(p.edge_classes.empty());
    CHECK_FALSE(p.diagonal_classes.empty());
    for (const ClassId c : p.edge_classes)
      CHECK(p.lambda_by_class[c] == 4);
    for (const ClassId c : p.diagonal_classes)
      CHECK(p.lambda_by_class[c] == 1);
  }
  const PBIBDReport p13 = pbibd_report(built_for(13).cell, built_for(13).scheme);
  CHECK(p13.v == 42);
  CHECK(p13.b == 91);
  CHECK(p13.v * p13.r == 546);
  CHECK_THROWS_AS(pbibd_report(built_for(5).cell, built_for(5).scheme), Error);
}
