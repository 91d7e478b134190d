#pragma once

#include "hyperblock/cellulation.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace hyperblock {

/// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  explicit SymmetricMatrix(std::size_t size) : n(size), data(size * size, 0.0) {}
  double &operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

struct EigenSystem {
  std::vector<double> values;   ///< descending
  std::vector<double> vectors;  ///< column k (length n) belongs to values[k], row-major n x n
  double off_diagonal_norm = 0.0;
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `tolerance`.
EigenSystem jacobi_eigen(SymmetricMatrix a, double tolerance = 1e-10, std::size_t max_sweeps = 100);

/// Second-largest eigenvalue of the adjacency matrix of a connected
/// `degree`-regular graph by power iteration on A + degree * I restricted
/// to the complement of the all-ones vector.
double deflated_power_second(const SymmetricMatrix &adjacency, double degree,
                             double tolerance = 1e-13, std::size_t max_iterations = 200000);

SymmetricMatrix adjacency_matrix(std::size_t n, const std::vector<CuspPair> &edges);

struct SpectralReport {
  double lambda_max = 0.0;
  double lambda_2 = 0.0;
  double lambda_min = 0.0;
  double power_lambda_2 = 0.0; ///< independent cross-check of lambda_2
  double ramanujan_bound = 0.0; ///< 2 sqrt(q - 1)
  double off_diagonal_norm = 0.0;
};

/// Spectrum summary of the q-regular edge graph. Throws NotConnected if
/// the top eigenvalue is not simple.
SpectralReport spectral_gap(std::size_t n, const std::vector<CuspPair> &edges, int degree);
SpectralReport spectral_gap(const Cellulation &cell);

} // namespace hyperblock
