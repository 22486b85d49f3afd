#pragma once

// Test-only reference implementations, written independently of the
// library's stepping code.

#include <Eigen/Eigenvalues>
#include <complex>
#include <map>
#include <random>
#include <utility>

#include "qwalk/hilbert.hpp"

namespace qwalk::testing {

using Amplitudes = std::map<std::pair<int, int>, std::complex<double>>;  // (coin, k)

/// (S C)^n on a sparse amplitude table, straight from the definitions:
/// C acts on the coin at every site, then coin 0 moves to k-1, coin 1 to k+1.
inline std::map<int, double> brute_force_walk(int steps, const std::complex<double> (&c)[2][2],
                                              std::complex<double> a0, std::complex<double> a1) {
  Amplitudes amp{{{0, 0}, a0}, {{1, 0}, a1}};
  for (int s = 0; s < steps; ++s) {
    Amplitudes rotated;
    for (const auto& [key, v] : amp) {
      const auto [coin, k] = key;
      rotated[{0, k}] += c[0][coin] * v;
      rotated[{1, k}] += c[1][coin] * v;
    }
    Amplitudes moved;
    for (const auto& [key, v] : rotated) {
      const auto [coin, k] = key;
      moved[{coin, coin == 0 ? k - 1 : k + 1}] += v;
    }
    amp = std::move(moved);
  }
  std::map<int, double> p;
  for (const auto& [key, v] : amp) p[key.second] += std::norm(v);
  return p;
}

inline Eigen::MatrixXcd to_eigen(const DensityOperator& rho) {
  const auto n = static_cast<Eigen::Index>(rho.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return m;
}

inline double min_eigenvalue(const DensityOperator& rho) {
  Eigen::MatrixXcd m = to_eigen(rho);
  m = 0.5 * (m + m.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// rho = G G^dagger / tr(G G^dagger) with Gaussian G: full rank, random.
inline DensityOperator random_density(const PositionSpace& space, std::mt19937_64& rng) {
  DensityOperator rho(space);
  const auto n = static_cast<Eigen::Index>(rho.size());
  std::normal_distribution<double> g;
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
  Eigen::MatrixXcd r = a * a.adjoint();
  r /= r.trace().real();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
  return rho;
}

inline double max_abs_diff(const DensityOperator& a, const DensityOperator& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

}  // namespace qwalk::testing
