#include "hyperblock/scheme.hpp"

#include "hyperblock/error.hpp"
#include "hyperblock/parallel.hpp"

#include <algorithm>
#include <mutex>
#include <random>

namespace hyperblock {

AssociationScheme build_scheme(const GroupTable &table, const CuspIndex &cusps) {
  const Psl2 &group = table.group();
  if (group.mode() != CuspMode::Dim3)
    throw Error(ErrorCode::ModeMismatch, "association scheme is built on 3D cusps");
  AssociationScheme s;
  s.v = cusps.size();
  s.base = cusps.id(group.infinity());

  const auto stab = cusp_stabilizer(table, cusps[s.base]);
  std::vector<int> suborbit(s.v, -1);
  std::vector<std::vector<CuspId>> orbits;
  for (CuspId y = 0; y < s.v; ++y) {
    if (suborbit[y] >= 0)
      continue;
    std::vector<CuspId> orbit;
    for (const ProjMatrix &g : stab) {
      const CuspId z = cusps.id(group.act(g, cusps[y]));
      if (suborbit[z] < 0) {
        suborbit[z] = static_cast<int>(orbits.size());
        orbit.push_back(z);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  // class 0 is {base}; the rest keep their order by smallest member
  std::vector<ClassId> renumber(orbits.size());
  {
    const int base_orbit = suborbit[s.base];
    ClassId next = 1;
    for (std::size_t i = 0; i < orbits.size(); ++i)
      renumber[i] = static_cast<int>(i) == base_orbit ? 0 : next++;
  }
  s.m = orbits.size() - 1;
  s.suborbits.resize(orbits.size());
  s.valency.resize(orbits.size());
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    s.valency[renumber[i]] = orbits[i].size();
    s.suborbits[renumber[i]] = orbits[i];
  }

  const auto to_base = transversal_to(table, cusps, s.base);
  s.class_of.assign(s.v * s.v, 0);
  parallel_chunks(s.v, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t x = begin; x < end; ++x)
      for (CuspId y = 0; y < s.v; ++y) {
        const CuspId z = cusps.id(group.act(to_base[x], cusps[y]));
        s.class_of[x * s.v + y] = renumber[static_cast<std::size_t>(suborbit[z])];
      }
  });

  s.transpose.assign(s.classes(), 0);
  std::vector<bool> seen(s.classes(), false);
  for (CuspId x = 0; x < s.v; ++x)
    for (CuspId y = 0; y < s.v; ++y) {
      const ClassId c = s.cls(x, y);
      if (!seen[c]) {
        seen[c] = true;
        s.transpose[c] = s.cls(y, x);
      }
    }
  return s;
}

AssociationScheme build_scheme(const Cellulation &cell) {
  return build_scheme(*cell.table, cell.cusps);
}

std::string to_string(AxiomMode mode) {
  return mode == AxiomMode::Exhaustive ? "exhaustive" : "sampled";
}

namespace {

// Fills counts[i * n + j] = |{z : (x,z) in C_i, (z,y) in C_j}|.
void count_paths(const AssociationScheme &s, CuspId x, CuspId y, std::vector<std::size_t> &counts) {
  const std::size_t n = s.classes();
  std::fill(counts.begin(), counts.end(), 0);
  for (CuspId z = 0; z < s.v; ++z)
    ++counts[static_cast<std::size_t>(s.cls(x, z)) * n + s.cls(z, y)];
}

std::string pair_text(CuspId x, CuspId y) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ")";
}

} // namespace

SchemeAxiomReport verify_scheme_axioms(const AssociationScheme &s, AxiomMode mode,
                                       std::uint64_t seed) {
  if (mode == AxiomMode::Exhaustive && s.v > kExhaustiveMaxV)
    throw Error(ErrorCode::NotApplicable,
                "exhaustive verification needs v <= " + std::to_string(kExhaustiveMaxV));
  SchemeAxiomReport report;
  report.mode = mode;
  const std::size_t n = s.classes();

  // (i) constant class degrees
  for (CuspId x = 0; x < s.v; ++x) {
    std::vector<std::size_t> degree(n, 0);
    for (CuspId y = 0; y < s.v; ++y)
      ++degree[s.cls(x, y)];
    for (std::size_t j = 0; j < n; ++j)
      if (degree[j] != s.valency[j])
        throw Error(ErrorCode::SchemeViolation,
                    "class " + std::to_string(j) + " degree differs at vertex " + std::to_string(x));
  }
  report.valencies_constant = true;

  // reference table per class, from its first pair in row-major order
  report.intersection_numbers.assign(n * n * n, 0);
  std::vector<bool> have(n, false);
  {
    std::vector<std::size_t> counts(n * n);
    for (CuspId x = 0; x < s.v; ++x)
      for (CuspId y = 0; y < s.v; ++y) {
        const ClassId k = s.cls(x, y);
        if (have[k])
          continue;
        have[k] = true;
        count_paths(s, x, y, counts);
        std::copy(counts.begin(), counts.end(), report.intersection_numbers.begin() + k * n * n);
      }
  }

  std::vector<std::pair<CuspId, CuspId>> pairs;
  if (mode == AxiomMode::Exhaustive) {
    pairs.reserve(s.v * s.v);
    for (CuspId x = 0; x < s.v; ++x)
      for (CuspId y = 0; y < s.v; ++y)
        pairs.emplace_back(x, y);
  } else {
    std::vector<std::vector<std::pair<CuspId, CuspId>>> by_class(n);
    for (CuspId x = 0; x < s.v; ++x)
      for (CuspId y = 0; y < s.v; ++y)
        by_class[s.cls(x, y)].emplace_back(x, y);
    std::mt19937_64 rng(seed);
    for (const auto &members : by_class)
      for (std::size_t t = 0; t < kSamplesPerClass; ++t)
        pairs.push_back(members[rng() % members.size()]);
  }

  std::mutex mutex;
  std::string violation;
  parallel_chunks(pairs.size(), [&](std::size_t begin, std::size_t end, unsigned) {
    std::vector<std::size_t> counts(n * n);
    for (std::size_t t = begin; t < end; ++t) {
      const auto [x, y] = pairs[t];
      const ClassId k = s.cls(x, y);
      count_paths(s, x, y, counts);
      if (!std::equal(counts.begin(), counts.end(), report.intersection_numbers.begin() + k * n * n)) {
        std::lock_guard lock(mutex);
        if (violation.empty())
          violation = "intersection numbers of class " + std::to_string(k) + " differ at pair " +
                      pair_text(x, y);
        return;
      }
    }
  });
  if (!violation.empty())
    throw Error(ErrorCode::SchemeViolation, violation);
  report.pairs_checked = pairs.size();
  report.intersections_constant = true;
  return report;
}

PBIBDReport pbibd_report(const Cellulation &cell, const AssociationScheme &s) {
  const auto q = static_cast<std::size_t>(cell.q());
  if (q == 5)
    throw Error(ErrorCode::NotApplicable, "q = 5 gives the trivial design on K6");
  PBIBDReport out;
  out.v = cell.v();
  out.b = cell.blocks.size();
  out.k = 6;
  out.m = s.m;
  // replication at the base vertex
  out.r = 0;
  for (const Block &b : cell.blocks)
    out.r += std::count(b.verts.begin(), b.verts.end(), cell.infinity);

  const std::size_t n = s.classes();
  out.lambda_by_class.assign(n, -1);
  out.lambda_by_class[0] = static_cast<int>(out.r);
  std::vector<int> edge_kind(n, -1); // 0 neither, 1 edge, 2 diagonal, 3 mixed
  for (CuspId x = 0; x < out.v; ++x)
    for (CuspId y = 0; y < out.v; ++y) {
      if (x == y)
        continue;
      const ClassId c = s.cls(x, y);
      const int lambda = cell.membership[cell.at(x, y)];
      if (out.lambda_by_class[c] < 0)
        out.lambda_by_class[c] = lambda;
      else if (out.lambda_by_class[c] != lambda)
        throw Error(ErrorCode::NotAPBIBD, "lambda is not constant on class " + std::to_string(c));
      const bool is_edge = cell.edge_incidence[cell.at(x, y)] > 0;
      const bool is_diag = cell.diagonal_incidence[cell.at(x, y)] > 0;
      const int kind = is_edge && is_diag ? 3 : is_edge ? 1 : is_diag ? 2 : 0;
      if (edge_kind[c] < 0)
        edge_kind[c] = kind;
      else if (edge_kind[c] != kind)
        edge_kind[c] = 3;
    }

  out.classes_pure = true;
  out.lambda_trichotomy = true;
  for (ClassId c = 1; c < n; ++c) {
    if (edge_kind[c] == 3)
      out.classes_pure = false;
    if (edge_kind[c] == 1)
      out.edge_classes.push_back(c);
    if (edge_kind[c] == 2)
      out.diagonal_classes.push_back(c);
    const int expected = edge_kind[c] == 1 ? 4 : edge_kind[c] == 2 ? 1 : edge_kind[c] == 0 ? 0 : -1;
    if (out.lambda_by_class[c] != expected)
      out.lambda_trichotomy = false;
  }

  out.parameters_match = out.v == (q * q - 1) / 4 && out.b == q * (q * q - 1) / 24 && out.r == q &&
                         out.k == 6;
  out.m_bound = out.m >= (q + 7) / 8;
  std::size_t lambda_sum = 0;
  for (ClassId c = 1; c < n; ++c)
    lambda_sum += static_cast<std::size_t>(out.lambda_by_class[c]) * s.valency[c];
  out.incidence_identities = out.v * out.r == out.b * out.k && lambda_sum == out.r * (out.k - 1);
  return out;
}

} // namespace hyperblock
