// hyperblock: build and verify the octahedral cellulations X_q, the
// surfaces S_q and the split cusp links, and export them.

#include "hyperblock/export.hpp"
#include "hyperblock/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
  using namespace hyperblock;

  CLI::App app{"Octahedral cellulations from PSL2 over Gaussian residue fields"};
  app.require_subcommand(1);

  RunConfig config;
  std::string depth = "full";
  std::string format = "json";
  std::vector<int> bands;

  const auto add_common = [&](CLI::App *sub, bool with_bands) {
    sub->add_option("--q", config.q, "field order (or prime, for surface)")->required();
    sub->add_option("--out", config.out, "output path");
    sub->add_option("--format", format, "json, csv or off")->check(CLI::IsMember({"json", "csv", "off"}));
    sub->add_option("--seed", config.seed, "seed for sampled scheme checks");
    if (with_bands)
      sub->add_option("--bands", bands, "three band sizes summing to q")->expected(3);
  };

  add_common(app.add_subcommand("build3d", "build X_q and export it"), false);
  CLI::App *verify = app.add_subcommand("verify", "run the verification suites");
  add_common(verify, true);
  verify->add_option("--depth", depth, "counts, lemmas or full")
      ->check(CLI::IsMember({"counts", "lemmas", "full"}));
  add_common(app.add_subcommand("design", "export the partially balanced design"), false);
  add_common(app.add_subcommand("surface", "build and verify S_q"), false);
  add_common(app.add_subcommand("links", "check cusp links and their three-way splits"), true);
  add_common(app.add_subcommand("analyze", "spectrum of the edge graph"), false);
  add_common(app.add_subcommand("summary", "counts for the split manifold"), true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    config.depth = parse_depth(depth);
    config.format = parse_format(format);
    if (!bands.empty())
      config.bands = std::array<int, 3>{bands[0], bands[1], bands[2]};
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const RunResult result = run(config);
  std::cout << dump(result.report);
  if (result.report.contains("error"))
    std::cerr << "error: " << result.report["error"]["message"].get<std::string>() << '\n';
  return result.exit_code;
}
