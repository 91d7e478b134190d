// One line per acceptance criterion; exit status 1 if any fails.

#include "hyperblock/cusplink.hpp"
#include "hyperblock/error.hpp"
#include "hyperblock/export.hpp"
#include "hyperblock/linalg.hpp"
#include "hyperblock/scheme.hpp"
#include "hyperblock/surface.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace hyperblock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string &name, double budget_s, const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.detail += " over budget";
  }
  if (!o.pass)
    ++failures;
  std::printf("%s  %2d %-22s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char *f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome c1() {
  const Cellulation cell = build_cellulation(make_field(5));
  bool ok = cell.v() == 6 && cell.blocks.size() == 5;
  // edge graph is K6
  std::set<CuspPair> edges(cell.edges.begin(), cell.edges.end());
  ok = ok && edges.size() == 15;
  // diagonals: 5 perfect matchings covering all 15 pairs once
  std::set<CuspPair> covered;
  for (const Block &b : cell.blocks) {
    std::set<CuspId> hit;
    for (const auto &[x, y] : b.pairing) {
      hit.insert(x);
      hit.insert(y);
      covered.insert(make_pair_sorted(x, y));
    }
    ok = ok && hit.size() == 6;
  }
  ok = ok && covered.size() == 15 && one_factorization_k6(cell).size() == 5;
  return {ok, fmt("v=%zu b=%zu matchings=%zu", cell.v(), cell.blocks.size(), covered.size() / 3)};
}

Outcome c2() {
  const Cellulation cell = build_cellulation(make_field(13));
  std::size_t r = 0;
  for (const Block &b : cell.blocks)
    r += static_cast<std::size_t>(std::count(b.verts.begin(), b.verts.end(), cell.infinity));
  bool ok = cell.v() == 42 && cell.blocks.size() == 91 && r == 13;
  std::set<CuspPair> edges(cell.edges.begin(), cell.edges.end());
  std::set<CuspPair> diags(cell.diagonals.begin(), cell.diagonals.end());
  for (CuspId x = 0; x < cell.v(); ++x)
    for (CuspId y = x + 1; y < cell.v(); ++y) {
      int together = 0;
      for (const Block &b : cell.blocks)
        together += std::count(b.verts.begin(), b.verts.end(), x) && std::count(b.verts.begin(), b.verts.end(), y);
      const int want = edges.count({x, y}) ? 4 : diags.count({x, y}) ? 1 : 0;
      ok = ok && together == want;
    }
  return {ok, fmt("v=%zu b=%zu r=%zu k=6", cell.v(), cell.blocks.size(), r)};
}

Outcome c3() {
  bool ok = true;
  std::string d;
  for (const int q : {9, 13, 17, 29}) {
    const Cellulation cell = build_cellulation(make_field(q));
    const bool t = verify_tiling_lemma(cell).all();
    const bool sr = verify_strongly_regular(cell);
    ok = ok && t && sr;
    d += fmt("q=%d:%s ", q, t && sr ? "ok" : "bad");
  }
  return {ok, d};
}

Outcome c4() {
  bool ok = true;
  std::string d;
  for (const int q : {9, 13, 17}) {
    const Cellulation cell = build_cellulation(make_field(q));
    const AssociationScheme scheme = build_scheme(cell);
    const SchemeAxiomReport ax = verify_scheme_axioms(scheme, AxiomMode::Exhaustive);
    const bool bound = scheme.m >= static_cast<std::size_t>((q + 7) / 8);
    ok = ok && ax.pass() && bound;
    d += fmt("q=%d m=%zu ", q, scheme.m);
  }
  return {ok, d};
}

Outcome c5() {
  bool ok = true;
  std::string d;
  for (const int q : {9, 13, 17}) {
    const Cellulation cell = build_cellulation(make_field(q));
    for (CuspId x = 0; x < cell.v(); ++x)
      ok = ok && cusp_stabilizer(*cell.table, cell.cusps[x]).size() == static_cast<std::size_t>(2 * q);
    d += fmt("q=%d:2q ", q);
  }
  const Cellulation cell = build_cellulation(make_field(13));
  const Psl2 &g = cell.group();
  const Cusp inf = g.infinity();
  const Cusp centre = g.cusp_from_rational({1, 1}, {2, 0});
  std::vector<ProjMatrix> both;
  for (const ProjMatrix &m : cusp_stabilizer(*cell.table, inf))
    if (g.act(m, centre) == centre)
      both.push_back(m);
  // psi = [[-i, i - 1], [0, i]]
  const ProjMatrix psi = g.reduce({0, -1}, {-1, 1}, {0, 0}, {0, 1});
  ok = ok && both.size() == 2 && std::count(both.begin(), both.end(), g.identity()) == 1 &&
       std::count(both.begin(), both.end(), psi) == 1;
  d += fmt("axis pair order %zu", both.size());
  return {ok, d};
}

Outcome c6() {
  bool ok = true;
  std::string d;
  const std::map<int, std::array<std::size_t, 4>> f{{5, {12, 30, 20, 0}}, {7, {24, 84, 56, 3}}};
  for (const int q : {5, 7, 11}) {
    const SurfaceComplex s = build_surface(q);
    const SurfaceReport r = verify_surface(s);
    const FlagReport fl = verify_flag_transitive(s, *s.group);
    bool good = r.pass() && fl.transitive && fl.orbit_size == 3 * r.t && fl.orbit_size == s.group->size();
    if (auto it = f.find(q); it != f.end())
      good = good && r.v == it->second[0] && r.e == it->second[1] && r.t == it->second[2] &&
             genus(s) == static_cast<long>(it->second[3]);
    ok = ok && good;
    d += fmt("q=%d (%zu,%zu,%zu) g=%ld ", q, r.v, r.e, r.t, genus(s));
  }
  return {ok, d};
}

Outcome c7() {
  bool ok = true;
  std::string d;
  for (const int q : {9, 13}) {
    const Cellulation cell = build_cellulation(make_field(q));
    const Banding banding = band_partition(cell.field());
    const auto uq = static_cast<std::size_t>(q);
    for (CuspId x = 0; x < cell.v(); ++x) {
      const TorusLink link = cusp_link(cell, x);
      ok = ok && link.labels.size() == uq && link.sides == 2 * uq && link.squares.size() == uq && link.euler == 0;
      const SplitLinks s = split_links(cell.field(), link, banding);
      ok = ok && s.pass();
      for (std::size_t k = 0; k < 3; ++k)
        ok = ok && s.checks[k].sphere() && s.checks[k].euler == 2;
      for (const auto &cut : s.cuts)
        ok = ok && cut.single_cycle;
    }
    d += fmt("q=%d %zu cusps ", q, cell.v());
  }
  return {ok, d};
}

Outcome c8() {
  bool ok = true;
  std::string d;
  for (const int q : {13, 17, 29}) {
    const Cellulation cell = build_cellulation(make_field(q));
    const ManifoldSummary m = manifold_summary(cell, band_partition(cell.field()));
    const auto uq = static_cast<std::size_t>(q);
    ok = ok && m.n == 3 * (uq * uq - 1) / 4 && m.log3_choices == cell.blocks.size() && m.ratio >= 15.0 &&
         m.ratio <= 16.0;
    d += fmt("q=%d n=%zu b=%zu %.2f ", q, m.n, m.log3_choices, m.ratio);
  }
  return {ok, d};
}

Outcome c9() {
  bool ok = true;
  std::string d;
  for (const int q : {5, 9, 13}) {
    const SpectralReport s = spectral_gap(build_cellulation(make_field(q)));
    ok = ok && std::abs(s.lambda_max - q) < 1e-8 && std::abs(s.lambda_2 - s.power_lambda_2) < 1e-6;
    if (q == 5)
      ok = ok && std::abs(s.lambda_2 + 1.0) < 1e-8;
    d += fmt("q=%d l2=%.6f ", q, s.lambda_2);
  }
  return {ok, d};
}

Outcome c10() {
  const auto dir = std::filesystem::temp_directory_path() / "hyperblock_acceptance";
  std::filesystem::create_directories(dir);
  std::string bytes[2];
  std::string digest[2];
  for (int k = 0; k < 2; ++k) {
    const auto path = dir / ("run" + std::to_string(k) + ".json");
    const std::string cmd =
        std::string(HYPERBLOCK_CLI) + " build3d --q 13 --out " + path.string() + " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0)
      return {false, "build3d failed"};
    std::ifstream in(path, std::ios::binary);
    bytes[k].assign(std::istreambuf_iterator<char>(in), {});
    digest[k] = parse_design_json(bytes[k]).digest;
  }
  std::filesystem::remove_all(dir);
  return {bytes[0] == bytes[1] && digest[0] == digest[1] && !bytes[0].empty(),
          fmt("%zu bytes digest %s", bytes[0].size(), digest[0].c_str())};
}

} // namespace

int main() {
  criterion(1, "q=5 sanity", 1, c1);
  criterion(2, "q=13 parameters", 5, c2);
  criterion(3, "tiling lemma", 60, c3);
  criterion(4, "scheme axioms", 0, c4);
  criterion(5, "stabilizers", 0, c5);
  criterion(6, "surfaces", 10, c6);
  criterion(7, "cusp links", 30, c7);
  criterion(8, "manifold counts", 0, c8);
  criterion(9, "spectral", 0, c9);
  criterion(10, "determinism", 0, c10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
