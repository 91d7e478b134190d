#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <sys/wait.h>

namespace {

const std::filesystem::path &scratch() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "hyperblock_cli_test";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string &args) {
  const std::string log = (scratch() / "log.txt").string();
  const std::string cmd = std::string(HYPERBLOCK_CLI) + " " + args + " > " + log + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace

TEST_CASE("exit codes by command and order") {
  const std::vector<std::string> commands{"build3d", "verify", "design", "surface", "links", "analyze", "summary"};
  for (const std::string &cmd : commands)
    for (const int q : {5, 8, 9, 13}) {
      int expected = 0;
      if (q == 8 || (cmd == "surface" && q == 9))
        expected = 1;
      CAPTURE(cmd);
      CAPTURE(q);
      CHECK(run_cli(cmd + " --q " + std::to_string(q)) == expected);
    }
}

TEST_CASE("usage errors") {
  CHECK(run_cli("") == 1);
  CHECK(run_cli("nonsense --q 5") == 1);
  CHECK(run_cli("build3d") == 1);
  CHECK(run_cli("build3d --q 5 --format xml") == 1);
  CHECK(run_cli("verify --q 5 --depth deep") == 1);
  CHECK(run_cli("links --q 13 --bands 5 5") == 1);
  CHECK(run_cli("links --q 13 --bands 5 5 5") == 1);
  CHECK(run_cli("build3d --q 5 --out " + (scratch() / "no" / "such" / "dir.json").string()) == 1);
  CHECK(run_cli("links --q 13 --bands 5 4 4") == 0);
}

TEST_CASE("artifacts") {
  const auto json_path = scratch() / "d.json";
  REQUIRE(run_cli("design --q 13 --out " + json_path.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(json_path));
  CHECK(j["header"]["v"] == 42);
  CHECK(j["header"]["b"] == 91);

  const auto csv_path = scratch() / "d.csv";
  REQUIRE(run_cli("design --q 5 --format csv --out " + csv_path.string()) == 0);
  CHECK(slurp(csv_path).size() == 6 * 10);

  const auto off_path = scratch() / "s.off";
  REQUIRE(run_cli("surface --q 5 --format off --out " + off_path.string()) == 0);
  CHECK(slurp(off_path).rfind("OFF\n12 30 20\n", 0) == 0);

  const auto report_path = scratch() / "r.json";
  REQUIRE(run_cli("verify --q 9 --depth lemmas --out " + report_path.string()) == 0);
  const auto r = nlohmann::json::parse(slurp(report_path));
  CHECK(r["pass"] == true);
  CHECK(r["claims"].contains("tiling.strongly_regular"));
  for (const auto &[name, c] : r["claims"].items())
    CHECK(c["pass"] == true);
}
