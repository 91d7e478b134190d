#include "hyperblock/pipeline.hpp"

#include "hyperblock/cusplink.hpp"
#include "hyperblock/error.hpp"
#include "hyperblock/export.hpp"
#include "hyperblock/linalg.hpp"
#include "hyperblock/surface.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace hyperblock {

using nlohmann::json;

Depth parse_depth(const std::string &s) {
  if (s == "counts")
    return Depth::Counts;
  if (s == "lemmas")
    return Depth::Lemmas;
  if (s == "full")
    return Depth::Full;
  throw std::invalid_argument("unknown depth '" + s + "'");
}

Format parse_format(const std::string &s) {
  if (s == "json")
    return Format::Json;
  if (s == "csv")
    return Format::Csv;
  if (s == "off")
    return Format::Off;
  throw std::invalid_argument("unknown format '" + s + "'");
}

std::string to_string(Depth d) {
  switch (d) {
  case Depth::Counts:
    return "counts";
  case Depth::Lemmas:
    return "lemmas";
  case Depth::Full:
    return "full";
  }
  return "?";
}

namespace {

void claim(json &report, const std::string &name, bool pass, json detail = json::object()) {
  detail["pass"] = pass;
  report["claims"][name] = std::move(detail);
}

json matrix_json(const ProjMatrix &g) {
  const auto e = [](FieldElement z) { return json{z.x, z.y}; };
  return {e(g.a), e(g.b), e(g.c), e(g.d)};
}

json pairs_json(const std::vector<CuspPair> &pairs) {
  json out = json::array();
  for (const auto &[a, b] : pairs)
    out.push_back({a, b});
  return out;
}

void count_claims(const Cellulation &cell, json &report) {
  const auto q = static_cast<std::size_t>(cell.q());
  const std::size_t b = cell.blocks.size();
  claim(report, "counts.cusps", cell.v() == (q * q - 1) / 4, {{"v", cell.v()}});
  claim(report, "counts.blocks", b == q * (q * q - 1) / 24, {{"b", b}});
  claim(report, "counts.group_order", cell.table->size() == q * (q * q - 1) / 2,
        {{"order", cell.table->size()}});
  std::size_t r = 0;
  for (const Block &block : cell.blocks)
    r += static_cast<std::size_t>(std::count(block.verts.begin(), block.verts.end(), cell.infinity));
  // build_cellulation already rejects non-constant replication
  claim(report, "counts.replication", r == q, {{"r", r}});
  claim(report, "counts.edges", cell.edges.size() == 3 * b, {{"edges", cell.edges.size()}});
  claim(report, "counts.diagonals", cell.diagonals.size() == 3 * b, {{"diagonals", cell.diagonals.size()}});
}

void lemma_claims(const Cellulation &cell, json &report) {
  const int q = cell.q();
  const TilingLemmaReport t = verify_tiling_lemma(cell);
  claim(report, "tiling.part1_distinct_vertices", t.distinct_vertices);
  claim(report, "tiling.part2_edge_in_four_blocks", t.no_multiple_edges);
  claim(report, "tiling.part3_diagonal_in_one_block", t.diagonal_determines_block);
  if (q == 5) {
    // at q = 5 every pair is both an edge and a diagonal, as expected
    claim(report, "tiling.part4_edges_avoid_diagonals", !t.edges_avoid_diagonals,
          {{"holds", t.edges_avoid_diagonals}, {"expected_exception", true}});
    const auto factors = one_factorization_k6(cell);
    json matchings = json::array();
    for (const auto &m : factors)
      matchings.push_back(pairs_json({m.begin(), m.end()}));
    claim(report, "k6.one_factorization", factors.size() == 5, {{"matchings", matchings}});
  } else {
    claim(report, "tiling.part4_edges_avoid_diagonals", t.edges_avoid_diagonals);
    claim(report, "tiling.strongly_regular", verify_strongly_regular(cell));
  }

  const Psl2 &g = cell.group();
  const Cusp inf = cell.cusps[cell.infinity];
  const Cusp centre = g.cusp_from_rational({1, 1}, {2, 0});
  const auto stab_inf = cusp_stabilizer(*cell.table, inf);
  const auto stab_centre = cusp_stabilizer(*cell.table, centre);
  claim(report, "stabilizer.cusp_order",
        stab_inf.size() == static_cast<std::size_t>(2 * q) &&
            stab_centre.size() == static_cast<std::size_t>(2 * q),
        {{"order", stab_inf.size()}, {"expected", 2 * q}});

  std::vector<ProjMatrix> both;
  for (const ProjMatrix &m : stab_inf)
    if (g.act(m, centre) == centre)
      both.push_back(m);
  const ProjMatrix psi = axis_half_turn(g);
  const bool axis_ok = both.size() == 2 &&
                       std::count(both.begin(), both.end(), g.identity()) == 1 &&
                       std::count(both.begin(), both.end(), psi) == 1;
  claim(report, "stabilizer.axis_pair", axis_ok, {{"order", both.size()}, {"psi", matrix_json(psi)}});

  const auto oct = octahedral_subgroup(g);
  auto stab_block = block_stabilizer(cell, cell.base);
  std::set<ProjMatrix> a(oct.begin(), oct.end()), b(stab_block.begin(), stab_block.end());
  claim(report, "octahedral.block_stabilizer", a == b && a.size() == 12, {{"order", stab_block.size()}});

  const BaseActionSummary s = base_action_summary(cell);
  claim(report, "octahedral.base_action", s.vertex_orbits == 1 && s.edge_orbits == 1 && s.flag_orbits > 1,
        {{"vertex_orbits", s.vertex_orbits},
         {"edge_orbits", s.edge_orbits},
         {"flag_orbits", s.flag_orbits}});
}

void scheme_claims(const Cellulation &cell, const AssociationScheme &scheme, std::uint64_t seed,
                   json &report) {
  const AxiomMode mode = scheme.v <= kExhaustiveMaxV ? AxiomMode::Exhaustive : AxiomMode::Sampled;
  const SchemeAxiomReport ax = verify_scheme_axioms(scheme, mode, seed);
  claim(report, "scheme.axioms", ax.pass(),
        {{"mode", to_string(mode)}, {"m", scheme.m}, {"valencies", scheme.valency},
         {"pairs_checked", ax.pairs_checked}});
  const int q = cell.q();
  claim(report, "scheme.class_count_bound", scheme.m >= static_cast<std::size_t>((q + 7) / 8),
        {{"m", scheme.m}, {"bound", (q + 7) / 8}});
}

void design_claims(const Cellulation &cell, const AssociationScheme &scheme, json &report) {
  if (cell.q() == 5) {
    report["notes"].push_back("q = 5: every pair lies in all 5 blocks, so no partially balanced design is claimed");
    return;
  }
  const PBIBDReport p = pbibd_report(cell, scheme);
  claim(report, "design.parameters", p.parameters_match,
        {{"v", p.v}, {"b", p.b}, {"r", p.r}, {"k", p.k}});
  claim(report, "design.lambda_trichotomy", p.lambda_trichotomy && p.classes_pure,
        {{"lambda", p.lambda_by_class}, {"edge_classes", p.edge_classes},
         {"diagonal_classes", p.diagonal_classes}});
  claim(report, "design.incidence_identities", p.incidence_identities);
}

void link_claims(const Cellulation &cell, const Banding &banding, json &report) {
  std::size_t tori = 0, spheres = 0, circles = 0, tiled = 0;
  json sample;
  for (CuspId x = 0; x < cell.v(); ++x) {
    const TorusLink link = cusp_link(cell, x);
    ++tori;
    const SplitLinks split = split_links(cell.field(), link, banding);
    spheres += split.checks[0].sphere() && split.checks[1].sphere() && split.checks[2].sphere();
    circles += split.cuts[0].single_cycle && split.cuts[1].single_cycle && split.cuts[2].single_cycle;
    tiled += split.areas_tile && split.sides_consistent && split.face_count_identity;
    if (x == cell.infinity) {
      sample["vertices"] = link.labels.size();
      sample["sides"] = link.sides;
      sample["squares"] = link.squares.size();
      sample["euler"] = link.euler;
      json pieces = json::array();
      for (std::size_t k = 0; k < 3; ++k)
        pieces.push_back({{"faces", split.checks[k].faces},
                          {"edges", split.checks[k].edges},
                          {"vertices", split.checks[k].vertices},
                          {"euler", split.checks[k].euler},
                          {"cut_segments", split.cuts[k].segments}});
      sample["split"] = pieces;
    }
  }
  const std::size_t v = cell.v();
  claim(report, "links.torus", tori == v, {{"cusps", v}, {"at_infinity", sample}});
  claim(report, "links.split_spheres", spheres == v, {{"bands", banding.sizes}, {"verified", spheres}});
  claim(report, "links.cut_circles", circles == v, {{"verified", circles}});
  claim(report, "links.flat_model_consistent", tiled == v, {{"verified", tiled}});
}

void spectral_claims(std::size_t n, const std::vector<CuspPair> &edges, int degree, json &report) {
  if (n > kSpectralMaxV) {
    report["notes"].push_back("spectral analysis skipped above " + std::to_string(kSpectralMaxV) + " vertices");
    return;
  }
  const SpectralReport s = spectral_gap(n, edges, degree);
  claim(report, "spectral.top_eigenvalue", std::abs(s.lambda_max - degree) < 1e-8,
        {{"lambda_max", s.lambda_max}, {"degree", degree}});
  claim(report, "spectral.power_iteration_agrees", std::abs(s.lambda_2 - s.power_lambda_2) < 1e-6,
        {{"jacobi", s.lambda_2}, {"power", s.power_lambda_2}});
  report["spectrum"] = {{"lambda_2", s.lambda_2},
                        {"lambda_min", s.lambda_min},
                        {"ramanujan_bound", s.ramanujan_bound},
                        {"within_ramanujan_bound",
                         std::max(std::abs(s.lambda_2), std::abs(s.lambda_min)) <= s.ramanujan_bound + 1e-9},
                        {"off_diagonal_norm", s.off_diagonal_norm}};
  if (degree == 5 && n == 6)
    claim(report, "spectral.k6_second_eigenvalue", std::abs(s.lambda_2 + 1.0) < 1e-8,
          {{"lambda_2", s.lambda_2}});
}

json verification_summary(const json &report) {
  json out = json::object();
  if (report.contains("claims"))
    for (const auto &[name, c] : report["claims"].items())
      out[name] = c["pass"];
  return out;
}

void write_artifact(const RunConfig &config, const std::string &content, json &report) {
  if (config.out.empty())
    return;
  write_atomic(config.out, content);
  report["artifact"] = {{"path", config.out}, {"digest", fnv1a_hex(content)}};
}

void require_format(const RunConfig &config, std::initializer_list<Format> allowed) {
  if (std::find(allowed.begin(), allowed.end(), config.format) == allowed.end())
    throw std::invalid_argument("format not supported by '" + config.command + "'");
}

void run_cellulation_command(const RunConfig &config, json &report) {
  const ResidueField field = make_field(config.q);
  const Cellulation cell = build_cellulation(field);
  report["pi"] = {field.generator().re, field.generator().im};

  if (config.command == "build3d" || config.command == "design") {
    require_format(config, {Format::Json, Format::Csv});
    const AssociationScheme scheme = build_scheme(cell);
    count_claims(cell, report);
    if (config.command == "design") {
      scheme_claims(cell, scheme, config.seed, report);
      design_claims(cell, scheme, report);
    }
    if (config.format == Format::Csv) {
      write_artifact(config, incidence_csv(cell), report);
    } else {
      const json design = design_json(cell, scheme, verification_summary(report));
      report["design_digest"] = design["digest"];
      write_artifact(config, dump(design), report);
    }
    return;
  }

  require_format(config, {Format::Json});
  if (config.command == "verify") {
    report["depth"] = to_string(config.depth);
    count_claims(cell, report);
    if (config.depth == Depth::Counts)
      return;
    lemma_claims(cell, report);
    if (config.depth == Depth::Lemmas)
      return;
    const AssociationScheme scheme = build_scheme(cell);
    scheme_claims(cell, scheme, config.seed, report);
    design_claims(cell, scheme, report);
    link_claims(cell, band_partition(field, config.bands), report);
    spectral_claims(cell.v(), cell.edges, cell.q(), report);
  } else if (config.command == "links") {
    link_claims(cell, band_partition(field, config.bands), report);
  } else if (config.command == "analyze") {
    spectral_claims(cell.v(), cell.edges, cell.q(), report);
  } else if (config.command == "summary") {
    const Banding banding = band_partition(field, config.bands);
    const ManifoldSummary s = manifold_summary(cell, banding);
    const auto q = static_cast<std::size_t>(config.q);
    claim(report, "manifold.vertex_count", s.n == 3 * (q * q - 1) / 4, {{"n", s.n}});
    claim(report, "manifold.diagonal_choices", s.log3_choices == s.blocks,
          {{"log3_choices", s.log3_choices}, {"blocks", s.blocks}});
    report["manifold"] = {{"cusps", s.cusps}, {"n", s.n},        {"blocks", s.blocks},
                          {"ratio_n_pow_1_5_over_blocks", s.ratio}, {"bands", s.bands}};
  }
}

void run_surface_command(const RunConfig &config, json &report) {
  require_format(config, {Format::Json, Format::Off});
  const SurfaceComplex s = build_surface(config.q);
  const SurfaceReport r = verify_surface(s);
  report["f_vector"] = {r.v, r.e, r.t};
  report["euler"] = r.euler;
  claim(report, "surface.simplicial", r.simplicial());
  claim(report, "surface.vertex_links_q_cycles", r.links_are_q_cycles);
  claim(report, "surface.counts", r.counts_match);
  claim(report, "surface.connected", r.connected && r.regular);
  claim(report, "surface.orientable", r.orientable);
  if (!r.pass())
    throw Error(ErrorCode::NotClosedSurface, "surface checks failed");
  report["genus"] = genus(s);
  const FlagReport f = verify_flag_transitive(s, *s.group);
  claim(report, "surface.flag_transitive", f.transitive,
        {{"flags", f.flags}, {"orbit_size", f.orbit_size}, {"group_order", s.group->size()}});
  if (config.format == Format::Off)
    write_artifact(config, surface_off(s), report);
}

} // namespace

void run_command(const RunConfig &config, json &report) {
  static const std::set<std::string> commands{"build3d", "verify", "design", "surface",
                                              "links",   "analyze", "summary"};
  if (!commands.count(config.command))
    throw std::invalid_argument("unknown command '" + config.command + "'");
  if (config.command == "surface")
    run_surface_command(config, report);
  else
    run_cellulation_command(config, report);
}

RunResult run(const RunConfig &config) {
  RunResult result;
  json &report = result.report;
  report["command"] = config.command;
  report["q"] = config.q;
  report["claims"] = json::object();
  report["notes"] = json::array();
  bool artifact_written = false;
  try {
    run_command(config, report);
    artifact_written = report.contains("artifact");
    bool pass = true;
    for (const auto &[name, c] : report["claims"].items())
      pass = pass && c["pass"].get<bool>();
    report["pass"] = pass;
    result.exit_code = pass ? kExitPass : kExitVerification;
  } catch (const Error &e) {
    report["pass"] = false;
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    result.exit_code = is_verification_failure(e.code()) ? kExitVerification : kExitUsage;
  } catch (const std::exception &e) {
    report["pass"] = false;
    report["error"] = {{"code", "Usage"}, {"message", e.what()}};
    result.exit_code = kExitUsage;
  }
  // commands without a file artifact write their report to --out
  if (!artifact_written && !config.out.empty() && result.exit_code != kExitUsage &&
      config.command != "build3d" && config.command != "design" &&
      !(config.command == "surface" && config.format == Format::Off)) {
    try {
      write_atomic(config.out, dump(report));
    } catch (const Error &e) {
      report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
      result.exit_code = kExitUsage;
    }
  }
  return result;
}

} // namespace hyperblock
