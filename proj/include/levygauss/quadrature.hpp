// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace levygauss {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule for the standard normal weight N(0,1). Nodes come Golub-Welsch
/// style from the Jacobi matrix of the monic Hermite recurrence (diagonal 0,
/// off-diagonal sqrt(k)), polished by Newton steps on the orthonormal
/// recurrence. Weights use the Christoffel form 1/sum_k p_k(x)^2, which
/// keeps full relative accuracy for the tiny edge weights, where the plain
/// squared-eigenvector formula loses them. n nodes integrate polynomials of
/// degree <= 2n-1 exactly.
inline QuadratureRule compute_gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("compute_gauss_hermite: need n >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    jacobi(k - 1, k) = b;
    jacobi(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);

  // orthonormal values p_0..p_max at x: p_{k+1} = (x p_k - sqrt(k) p_{k-1})/sqrt(k+1)
  std::vector<double> values(n + 1);
  auto evaluate = [&values, n](double x) {
    values[0] = 1.0;
    if (n >= 1) values[1] = x;
    for (int k = 1; k < n; ++k)
      values[k + 1] = (x * values[k] - std::sqrt(static_cast<double>(k)) * values[k - 1]) /
                      std::sqrt(static_cast<double>(k + 1));
  };

  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = solver.eigenvalues()(i);
    for (int iter = 0; iter < 2; ++iter) {
      evaluate(x);
      const double derivative = std::sqrt(static_cast<double>(n)) * values[n - 1];
      if (derivative == 0.0) break;
      x -= values[n] / derivative;
    }
    evaluate(x);
    double christoffel = 0.0;
    for (int k = 0; k < n; ++k) christoffel += values[k] * values[k];
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / christoffel;  // total mass of N(0,1) is 1
  }
  return rule;
}

/// Cached rules; concurrent readers are safe once a rule exists.
inline const QuadratureRule& gauss_hermite_rule(int n = 200) {
  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_hermite(n)).first;
  return it->second;
}

}  // namespace levygauss
