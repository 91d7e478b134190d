#include "hyperblock/error.hpp"
#include "hyperblock/export.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace hyperblock;

namespace {

std::vector<std::vector<int>> parse_csv(const std::string &text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<int> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ','))
      row.push_back(std::stoi(cell));
    rows.push_back(row);
  }
  return rows;
}

} // namespace

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("design export round trip") {
  const Cellulation cell = build_cellulation(make_field(13));
  const AssociationScheme scheme = build_scheme(cell);
  const nlohmann::json j = design_json(cell, scheme, {{"pass", true}});
  const DesignData d = parse_design_json(dump(j));
  CHECK(d.q == 13);
  CHECK(d.pi == std::array<std::int64_t, 2>{3, 2});
  CHECK(d.v == 42);
  CHECK(d.b == 91);
  CHECK(d.r == 13);
  CHECK(d.k == 6);
  CHECK(d.m == scheme.m);
  CHECK(d.lambda.front() == 13);
  for (std::size_t c = 1; c < d.lambda.size(); ++c)
    CHECK((d.lambda[c] == 0 || d.lambda[c] == 1 || d.lambda[c] == 4));
  CHECK(d.vertices.size() == 42);

  // blocks and diagonals as the cellulation has them
  const auto canon = canonical_blocks(cell);
  REQUIRE(canon.size() == d.blocks.size());
  for (std::size_t i = 0; i < canon.size(); ++i) {
    CHECK(canon[i].first == d.blocks[i]);
    CHECK(canon[i].second == d.diagonals[i]);
  }
  // recount lambda from the exported blocks alone
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> together;
  for (const auto &blk : d.blocks)
    for (std::size_t a = 0; a < 6; ++a)
      for (std::size_t b = a + 1; b < 6; ++b)
        ++together[{blk[a], blk[b]}];
  std::set<int> seen;
  for (const auto &[pair, n] : together)
    seen.insert(n);
  CHECK(seen == std::set<int>{1, 4});

  // deterministic
  CHECK(dump(design_json(cell, scheme, {{"pass", true}})) == dump(j));
}

TEST_CASE("tampered exports are rejected") {
  const Cellulation cell = build_cellulation(make_field(9));
  const AssociationScheme scheme = build_scheme(cell);
  nlohmann::json j = design_json(cell, scheme, {{"pass", true}});
  nlohmann::json edited = j;
  edited["blocks"][0][0] = 99;
  CHECK_THROWS_AS(parse_design_json(dump(edited)), Error);
  edited = j;
  edited["header"]["b"] = 1;
  CHECK_THROWS_AS(parse_design_json(dump(edited)), Error);
  CHECK_THROWS_AS(parse_design_json("{not json"), Error);
  CHECK_NOTHROW(parse_design_json(dump(j)));
}

TEST_CASE("incidence CSV") {
  for (const auto &[q, b] : {std::pair{5, 5}, std::pair{13, 91}}) {
    const Cellulation cell = build_cellulation(make_field(q));
    const auto rows = parse_csv(incidence_csv(cell));
    REQUIRE(rows.size() == cell.v());
    std::vector<int> col(static_cast<std::size_t>(b), 0);
    for (const auto &row : rows) {
      REQUIRE(row.size() == static_cast<std::size_t>(b));
      int sum = 0;
      for (std::size_t c = 0; c < row.size(); ++c) {
        CHECK((row[c] == 0 || row[c] == 1));
        sum += row[c];
        col[c] += row[c];
      }
      CHECK(sum == q);
    }
    for (const int c : col)
      CHECK(c == 6);
  }
}

TEST_CASE("OFF export") {
  for (const auto &[q, header] : {std::pair{5, "12 30 20"}, std::pair{7, "24 84 56"}}) {
    const SurfaceComplex s = build_surface(q);
    std::istringstream in(surface_off(s));
    std::string line;
    std::getline(in, line);
    CHECK(line == "OFF");
    std::getline(in, line);
    CHECK(line == header);
    std::istringstream h(line);
    std::size_t v = 0, e = 0, t = 0;
    h >> v >> e >> t;
    for (std::size_t i = 0; i < v; ++i) {
      double x = 0, y = 0, z = 0;
      in >> x >> y >> z;
      CHECK(x * x + y * y + z * z == doctest::Approx(1.0).epsilon(1e-5));
    }
    std::size_t faces = 0;
    std::size_t n = 0;
    while (in >> n) {
      CHECK(n == 3);
      std::set<std::size_t> ids;
      for (int k = 0; k < 3; ++k) {
        std::size_t id = 0;
        in >> id;
        CHECK(id < v);
        ids.insert(id);
      }
      CHECK(ids.size() == 3);
      ++faces;
    }
    CHECK(faces == t);
  }
}

TEST_CASE("atomic writes") {
  const auto dir = std::filesystem::temp_directory_path() / "hyperblock_export_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.json";
  write_atomic(path, "first");
  write_atomic(path, "second");
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  CHECK(text == "second");
  CHECK_FALSE(std::filesystem::exists(dir / "x.json.tmp"));
  CHECK_THROWS_AS(write_atomic(dir / "missing" / "y.json", "z"), Error);
  std::filesystem::remove_all(dir);
}
