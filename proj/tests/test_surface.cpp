#include "hyperblock/error.hpp"
#include "hyperblock/surface.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace hyperblock;

namespace {

const SurfaceComplex &surface_for(int q) {
  static std::map<int, SurfaceComplex> cache;
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, build_surface(q)).first;
  return it->second;
}

} // namespace

TEST_CASE("f-vectors and genus") {
  const std::map<int, std::array<std::size_t, 4>> expected{
      {5, {12, 30, 20, 0}}, {7, {24, 84, 56, 3}}, {11, {60, 330, 220, 26}}, {13, {84, 546, 364, 50}}};
  for (const auto &[q, f] : expected) {
    const SurfaceComplex &s = surface_for(q);
    const SurfaceReport r = verify_surface(s);
    CHECK(r.v == f[0]);
    CHECK(r.e == f[1]);
    CHECK(r.t == f[2]);
    CHECK(r.e * 2 == static_cast<std::size_t>(q) * r.v);
    CHECK(r.pass());
    CHECK(genus(s) == static_cast<long>(f[3]));
    CHECK(r.euler % 2 == 0);
    CHECK(r.euler <= 2);
  }
}

TEST_CASE("oriented flags form one regular orbit") {
  for (int q : {5, 7, 11}) {
    const SurfaceComplex &s = surface_for(q);
    const FlagReport f = verify_flag_transitive(s, *s.group);
    CHECK(f.transitive);
    CHECK(f.orientation_preserved);
    CHECK(f.orbit_size == 3 * s.triangles.size());
    CHECK(f.orbit_size == s.group->size());
  }
}

TEST_CASE("base triangle stabilizer is the order-3 rotation group") {
  for (int q : {5, 7, 11, 13}) {
    const SurfaceComplex &s = surface_for(q);
    const auto stab = triangle_stabilizer(s, *s.group);
    CHECK(stab.size() == 3);
    const Psl2 &g = s.group->group();
    const ProjMatrix g3 = g.reduce({0, 0}, {1, 0}, {-1, 0}, {1, 0});
    CHECK(std::count(stab.begin(), stab.end(), g3) == 1);
  }
}

TEST_CASE("orientation is coherent") {
  const SurfaceComplex &s = surface_for(7);
  const SurfaceReport r = verify_surface(s);
  REQUIRE(r.orientable);
  std::set<CuspPair> directed;
  for (const Triangle &t : r.orientation)
    for (std::size_t k = 0; k < 3; ++k)
      CHECK(directed.insert({t[k], t[(k + 1) % 3]}).second);
  for (const auto &[a, b] : directed)
    CHECK(directed.count({b, a}) == 1);
}

TEST_CASE("negative controls") {
  SurfaceComplex dup = surface_for(5);
  dup.triangles.push_back(dup.triangles.front());
  const SurfaceReport r = verify_surface(dup);
  CHECK_FALSE(r.no_duplicate_triangles);
  CHECK_FALSE(r.simplicial());
  CHECK_FALSE(r.pass());
  CHECK_THROWS_AS(genus(dup), Error);

  SurfaceComplex holed = surface_for(7);
  holed.triangles.pop_back();
  const SurfaceReport h = verify_surface(holed);
  CHECK_FALSE(h.edges_in_two_triangles);
  CHECK_FALSE(h.pass());

  CHECK_THROWS_AS(build_surface(9), Error);
  CHECK_THROWS_AS(build_surface(8), Error);
}
