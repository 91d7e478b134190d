#include "hyperblock/export.hpp"

#include "hyperblock/error.hpp"
#include "hyperblock/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hyperblock {

using nlohmann::json;

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void write_atomic(const std::filesystem::path &path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::IOError, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
      throw Error(ErrorCode::IOError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::IOError, "cannot move output into " + path.string());
  }
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

std::vector<std::pair<std::array<std::uint32_t, 6>, std::array<std::array<std::uint32_t, 2>, 3>>>
canonical_blocks(const Cellulation &cell) {
  std::vector<std::pair<std::array<std::uint32_t, 6>, std::array<std::array<std::uint32_t, 2>, 3>>> out;
  out.reserve(cell.blocks.size());
  for (const Block &block : cell.blocks) {
    std::array<std::uint32_t, 6> verts = block.verts;
    std::sort(verts.begin(), verts.end());
    std::array<std::array<std::uint32_t, 2>, 3> diag{};
    for (std::size_t k = 0; k < 3; ++k) {
      const CuspPair p = make_pair_sorted(block.pairing[k].first, block.pairing[k].second);
      diag[k] = {p.first, p.second};
    }
    std::sort(diag.begin(), diag.end());
    out.emplace_back(verts, diag);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::size_t replication(const Cellulation &cell) {
  return static_cast<std::size_t>(std::count_if(cell.blocks.begin(), cell.blocks.end(), [&](const Block &b) {
    return std::find(b.verts.begin(), b.verts.end(), cell.infinity) != b.verts.end();
  }));
}

} // namespace

std::vector<int> lambda_by_class(const Cellulation &cell, const AssociationScheme &scheme) {
  std::vector<int> out(scheme.classes(), 0);
  out[0] = static_cast<int>(replication(cell));
  for (std::size_t c = 1; c < scheme.classes(); ++c)
    if (!scheme.suborbits[c].empty())
      out[c] = cell.membership[cell.at(scheme.base, scheme.suborbits[c].front())];
  return out;
}

json design_json(const Cellulation &cell, const AssociationScheme &scheme, const json &verification) {
  const ResidueField &f = cell.field();
  json header;
  header["q"] = cell.q();
  header["pi"] = {f.generator().re, f.generator().im};
  header["v"] = cell.v();
  header["b"] = cell.blocks.size();
  header["r"] = replication(cell);
  header["k"] = 6;
  header["m"] = scheme.m;
  header["lambda"] = lambda_by_class(cell, scheme);
  header["verification"] = verification;

  json vertices = json::array();
  for (const Cusp &c : cell.cusps.cusps())
    vertices.push_back({f.index(c.u), f.index(c.w)});

  json blocks = json::array();
  json diagonals = json::array();
  for (const auto &[verts, diag] : canonical_blocks(cell)) {
    blocks.push_back(verts);
    diagonals.push_back(diag);
  }

  std::string classes;
  classes.reserve(scheme.class_of.size() * 2);
  for (const ClassId c : scheme.class_of) {
    classes.push_back(static_cast<char>(c & 0xff));
    classes.push_back(static_cast<char>(c >> 8));
  }

  json out;
  out["format"] = "hyperblock-design/1";
  out["header"] = header;
  out["vertices"] = vertices;
  out["blocks"] = blocks;
  out["diagonals"] = diagonals;
  out["class_map_digest"] = fnv1a_hex(classes);
  out["digest"] = fnv1a_hex(out.dump());
  return out;
}

DesignData parse_design_json(const std::string &text) {
  DesignData d;
  try {
    json j = json::parse(text);
    d.digest = j.at("digest").get<std::string>();
    j.erase("digest");
    if (fnv1a_hex(j.dump()) != d.digest)
      throw Error(ErrorCode::IOError, "design digest does not match its content");
    const json &h = j.at("header");
    d.q = h.at("q").get<int>();
    d.pi = h.at("pi").get<std::array<std::int64_t, 2>>();
    d.v = h.at("v").get<std::size_t>();
    d.b = h.at("b").get<std::size_t>();
    d.r = h.at("r").get<std::size_t>();
    d.k = h.at("k").get<std::size_t>();
    d.m = h.at("m").get<std::size_t>();
    d.lambda = h.at("lambda").get<std::vector<int>>();
    d.vertices = j.at("vertices").get<std::vector<std::array<int, 2>>>();
    d.blocks = j.at("blocks").get<std::vector<std::array<std::uint32_t, 6>>>();
    d.diagonals = j.at("diagonals").get<std::vector<std::array<std::array<std::uint32_t, 2>, 3>>>();
  } catch (const json::exception &e) {
    throw Error(ErrorCode::IOError, std::string("malformed design export: ") + e.what());
  }
  if (d.vertices.size() != d.v || d.blocks.size() != d.b || d.diagonals.size() != d.b)
    throw Error(ErrorCode::IOError, "design export sizes disagree with its header");
  return d;
}

std::string incidence_csv(const Cellulation &cell) {
  const auto blocks = canonical_blocks(cell);
  const std::size_t v = cell.v();
  std::vector<std::string> rows(v);
  for (std::size_t x = 0; x < v; ++x)
    rows[x].reserve(2 * blocks.size());
  for (std::size_t c = 0; c < blocks.size(); ++c) {
    const auto &verts = blocks[c].first;
    for (std::size_t x = 0; x < v; ++x) {
      if (c > 0)
        rows[x].push_back(',');
      const bool in = std::binary_search(verts.begin(), verts.end(), static_cast<std::uint32_t>(x));
      rows[x].push_back(in ? '1' : '0');
    }
  }
  std::string out;
  for (const std::string &row : rows) {
    out += row;
    out += '\n';
  }
  return out;
}

std::string surface_off(const SurfaceComplex &s) {
  const SurfaceReport r = verify_surface(s);
  if (!r.orientable)
    throw Error(ErrorCode::NotClosedSurface, "surface has no coherent orientation");
  const std::size_t n = s.num_vertices;
  const EigenSystem eig = jacobi_eigen(adjacency_matrix(n, s.edges()));

  std::ostringstream out;
  out << "OFF\n" << r.v << ' ' << r.e << ' ' << r.t << '\n';
  char buf[96];
  for (std::size_t x = 0; x < n; ++x) {
    std::array<double, 3> p{};
    for (std::size_t k = 0; k < 3; ++k)
      p[k] = k + 1 < n ? eig.vectors[x * n + k + 1] : 0.0;
    const double len = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (len < 1e-12)
      p = {1.0, 0.0, 0.0};
    else
      for (double &c : p)
        c /= len;
    for (double &c : p)
      if (std::abs(c) < 5e-7)
        c = 0.0;
    std::snprintf(buf, sizeof buf, "%.6f %.6f %.6f\n", p[0], p[1], p[2]);
    out << buf;
  }
  for (const Triangle &t : r.orientation)
    out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  return out.str();
}

} // namespace hyperblock
