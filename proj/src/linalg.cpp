#include "hyperblock/linalg.hpp"

#include "hyperblock/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hyperblock {

namespace {

double off_norm(const SymmetricMatrix &a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = 0; j < a.n; ++j)
      if (i != j)
        sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

} // namespace

EigenSystem jacobi_eigen(SymmetricMatrix a, double tolerance, std::size_t max_sweeps) {
  const std::size_t n = a.n;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    v[i * n + i] = 1.0;

  EigenSystem out;
  double off = off_norm(a);
  while (off >= tolerance && out.sweeps < max_sweeps) {
    ++out.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0)
          continue;
        // rotation angle annihilating a(p, q)
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k * n + p];
          const double vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
    off = off_norm(a);
  }
  out.off_diagonal_norm = off;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  out.values.resize(n);
  out.vectors.assign(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r)
      out.vectors[r * n + k] = v[r * n + order[k]];
  }
  return out;
}

double deflated_power_second(const SymmetricMatrix &adj, double degree, double tolerance,
                             std::size_t max_iterations) {
  const std::size_t n = adj.n;
  if (n < 2)
    return 0.0;
  std::vector<double> x(n), y(n);
  // fixed, non-symmetric start vector
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::sin(1.0 + 0.7 * static_cast<double>(i)) + 0.01 * static_cast<double>(i % 7);

  const auto deflate = [n](std::vector<double> &w) {
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(n);
    for (double &e : w)
      e -= mean;
  };
  const auto normalize = [](std::vector<double> &w) {
    const double len = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    for (double &e : w)
      e /= len;
  };
  deflate(x);
  normalize(x);

  double mu = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double sum = degree * x[i];
      for (std::size_t j = 0; j < n; ++j)
        sum += adj(i, j) * x[j];
      y[i] = sum;
    }
    deflate(y);
    mu = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      residual += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
    residual = std::sqrt(residual);
    x.swap(y);
    normalize(x);
    if (residual < tolerance * std::max(1.0, std::abs(mu)))
      break;
  }
  return mu - degree;
}

SymmetricMatrix adjacency_matrix(std::size_t n, const std::vector<CuspPair> &edges) {
  SymmetricMatrix a(n);
  for (const auto &[x, y] : edges) {
    a(x, y) = 1.0;
    a(y, x) = 1.0;
  }
  return a;
}

SpectralReport spectral_gap(std::size_t n, const std::vector<CuspPair> &edges, int degree) {
  const SymmetricMatrix adj = adjacency_matrix(n, edges);
  const EigenSystem eig = jacobi_eigen(adj);
  SpectralReport out;
  out.lambda_max = eig.values.front();
  out.lambda_2 = eig.values.size() > 1 ? eig.values[1] : eig.values.front();
  out.lambda_min = eig.values.back();
  out.off_diagonal_norm = eig.off_diagonal_norm;
  out.ramanujan_bound = 2.0 * std::sqrt(static_cast<double>(degree - 1));
  if (std::abs(out.lambda_max - out.lambda_2) < 1e-8)
    throw Error(ErrorCode::NotConnected, "top adjacency eigenvalue is not simple");
  out.power_lambda_2 = deflated_power_second(adj, static_cast<double>(degree));
  return out;
}

SpectralReport spectral_gap(const Cellulation &cell) {
  return spectral_gap(cell.v(), cell.edges, cell.q());
}

} // namespace hyperblock
