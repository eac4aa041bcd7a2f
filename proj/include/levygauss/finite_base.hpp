// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "levygauss/single_point.hpp"

namespace levygauss {

/// The base space reduced to m points with positive weights a_1..a_m; the
/// result of integrating any process over the cells of a finite partition.
struct FiniteBase {
  std::vector<double> weights;

  explicit FiniteBase(std::vector<double> cell_weights) : weights(std::move(cell_weights)) {
    for (double a : weights)
      if (!(a > 0)) throw std::invalid_argument("FiniteBase: weights must be positive");
  }

  int size() const { return static_cast<int>(weights.size()); }
  double total() const {
    double s = 0;
    for (double a : weights) s += a;
    return s;
  }
};

struct MultiIndex {
  std::vector<int> degrees;

  int size() const { return static_cast<int>(degrees.size()); }
  int total() const {
    int s = 0;
    for (int d : degrees) s += d;
    return s;
  }

  bool operator==(const MultiIndex& other) const { return degrees == other.degrees; }
};

/// Fixed ordering of blocks: by total degree, then lexicographic. Keeps Gram
/// matrices reproducible across runs.
inline bool multi_index_less(const MultiIndex& a, const MultiIndex& b) {
  if (a.total() != b.total()) return a.total() < b.total();
  return a.degrees < b.degrees;
}

inline std::vector<MultiIndex> multi_indices_up_to(int dimension, int max_total_degree) {
  std::vector<MultiIndex> out;
  MultiIndex current;
  current.degrees.assign(dimension, 0);
  // odometer over the simplex
  for (;;) {
    if (current.total() <= max_total_degree) out.push_back(current);
    int pos = dimension - 1;
    while (pos >= 0) {
      ++current.degrees[pos];
      if (current.total() <= max_total_degree) break;
      current.degrees[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end(), multi_index_less);
  return out;
}

/// A functional on the m-point base written in the tensor Hermite basis
/// (Gauss side) or, equivalently, its image in the tensor Charlier basis
/// (Poisson side).
struct ChaosCoefficients {
  std::map<std::vector<int>, double> entries;  // multi-index degrees -> coefficient
  FiniteBase base;

  ChaosCoefficients(std::map<std::vector<int>, double> coefficient_entries, FiniteBase finite_base)
      : entries(std::move(coefficient_entries)), base(std::move(finite_base)) {
    for (const auto& [k, c] : entries)
      if (static_cast<int>(k.size()) != base.size())
        throw std::invalid_argument("ChaosCoefficients: index length mismatch");
  }

  /// Gauss-side value at the point x.
  double evaluate_gauss(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != base.size())
      throw std::invalid_argument("ChaosCoefficients: dimension mismatch");
    double sum = 0;
    for (const auto& [k, c] : entries) {
      double prod = c;
      for (int j = 0; j < base.size(); ++j) prod *= hermite(k[j], base.weights[j], x[j]);
      sum += prod;
    }
    return sum;
  }

  /// Poisson-side value at the count vector k.
  double evaluate_poisson(const std::vector<int>& count) const {
    if (static_cast<int>(count.size()) != base.size())
      throw std::invalid_argument("ChaosCoefficients: dimension mismatch");
    double sum = 0;
    for (const auto& [k, c] : entries) {
      double prod = c;
      for (int j = 0; j < base.size(); ++j)
        prod *= charlier(k[j], base.weights[j], static_cast<double>(count[j]));
      sum += prod;
    }
    return sum;
  }

  /// Inner product on either side: both bases have norm^2 = a^n n!.
  double inner_product(const ChaosCoefficients& other) const {
    double sum = 0;
    for (const auto& [k, c] : entries) {
      auto it = other.entries.find(k);
      if (it == other.entries.end()) continue;
      double norm_sq = 1.0;
      for (int j = 0; j < base.size(); ++j)
        norm_sq *= std::pow(base.weights[j], k[j]) * std::tgamma(k[j] + 1.0);
      sum += c * it->second * norm_sq;
    }
    return sum;
  }
};

/// Product kernel on the m-point base: one kernel_1d factor per cell.
inline double kernel_finite(const MultiIndex& k, const std::vector<double>& x,
                            const FiniteBase& base) {
  if (k.size() != base.size() || static_cast<int>(x.size()) != base.size())
    throw std::invalid_argument("kernel_finite: dimension mismatch");
  double prod = 1.0;
  for (int j = 0; j < base.size(); ++j) prod *= kernel_1d(k.degrees[j], x[j], base.weights[j]);
  return prod;
}

/// Poisson-side image of the Gauss multiplicative functional with parameter
/// h: the sequence k -> prod_j e^{-a_j h_j} (1 + h_j)^{k_j}. Scalar may be
/// real or complex.
template <class Scalar>
struct MultiplicativeImage {
  std::vector<Scalar> h;
  FiniteBase base;

  Scalar operator()(const MultiIndex& k) const {
    if (k.size() != base.size())
      throw std::invalid_argument("MultiplicativeImage: dimension mismatch");
    Scalar prod(1);
    for (int j = 0; j < base.size(); ++j)
      prod *= std::exp(-base.weights[j] * h[j]) * pow_int(Scalar(1) + h[j], k.degrees[j]);
    return prod;
  }
};

template <class Scalar>
MultiplicativeImage<Scalar> multiplicative_image_finite(std::vector<Scalar> h,
                                                        const FiniteBase& base) {
  if (static_cast<int>(h.size()) != base.size())
    throw std::invalid_argument("multiplicative_image_finite: dimension mismatch");
  return MultiplicativeImage<Scalar>{std::move(h), base};
}

/// Poisson-side inner product of two multiplicative images, summed per
/// coordinate as a closed one-dimensional series (the sum factorizes).
/// The bilinear pairing is used: no conjugation.
template <class Scalar>
Scalar poisson_inner_product(const MultiplicativeImage<Scalar>& f,
                             const MultiplicativeImage<Scalar>& g, double tail_target = 1e-18) {
  if (f.base.size() != g.base.size())
    throw std::invalid_argument("poisson_inner_product: dimension mismatch");
  Scalar total(1);
  for (int j = 0; j < f.base.size(); ++j) {
    const double a = f.base.weights[j];
    // tail behaves like a Poisson of rate a*|ratio|, so cut there
    const double ratio_mag = std::abs((Scalar(1) + f.h[j]) * (Scalar(1) + g.h[j]));
    const int cutoff = poisson_series_cutoff(a * std::max(1.0, ratio_mag), 0, tail_target);
    Scalar factor = std::exp(-a * (f.h[j] + g.h[j]));
    Scalar series(0);
    const Scalar ratio = (Scalar(1) + f.h[j]) * (Scalar(1) + g.h[j]);
    double log_weight = -a;  // log of e^{-a} a^k / k!
    Scalar ratio_pow(1);
    for (int k = 0; k <= cutoff; ++k) {
      if (k > 0) {
        log_weight += std::log(a) - std::log(static_cast<double>(k));
        ratio_pow *= ratio;
      }
      series += std::exp(log_weight) * ratio_pow;
    }
    total *= factor * series;
  }
  return total;
}

/// exp(sum_j a_j h_j g_j): the closed form the inner product must reproduce.
template <class Scalar>
Scalar multiplicative_inner_product_closed_form(const std::vector<Scalar>& h,
                                                const std::vector<Scalar>& g,
                                                const FiniteBase& base) {
  Scalar exponent(0);
  for (int j = 0; j < base.size(); ++j) exponent += base.weights[j] * h[j] * g[j];
  return std::exp(exponent);
}

namespace detail {

/// Gram matrix of the kernel-mapped normalized Hermite basis on a single
/// cell: row n is the function k -> <K(k,.), H_n/||H_n||>_{N(0,a)} evaluated
/// by quadrature, and entries are Poisson-weighted dot products of rows.
inline Eigen::MatrixXd mapped_gram_1d(double a, int max_degree, int quad_nodes) {
  const int cutoff = poisson_series_cutoff(a, 2 * max_degree + 2, 1e-18);
  const QuadratureRule& rule = gauss_hermite_rule(quad_nodes);
  const double scale = std::sqrt(a);
  // image[n][k] = quadrature of K(k,x) * normalized-Hermite_n(x) dN(0,a)
  Eigen::MatrixXd image = Eigen::MatrixXd::Zero(max_degree + 1, cutoff + 1);
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const double x = scale * rule.nodes[q];
    const double w = rule.weights[q];
    const std::vector<double> u = normalized_hermite_values(max_degree, a, x);
    // K(k,x) sqrt(e^{-a} a^k/k!) = e^{-a-x} H_k(x+2a)/sqrt(a^k k!)
    const std::vector<double> kernel_scaled = normalized_hermite_values(cutoff, a, x + 2.0 * a);
    const double prefactor = std::exp(-a - x);
    for (int n = 0; n <= max_degree; ++n)
      for (int k = 0; k <= cutoff; ++k)
        image(n, k) += w * u[n] * prefactor * kernel_scaled[k];
  }
  return image * image.transpose();
}

}  // namespace detail

/// Max-norm deviation from the identity of the Gram matrix of kernel-mapped
/// normalized basis functions, over the block of multi-indices with total
/// degree <= max_total_degree.
inline double unitarity_defect(const FiniteBase& base, int max_total_degree, int quad_nodes = 200,
                               int block_cap = 4096) {
  const std::vector<MultiIndex> block = multi_indices_up_to(base.size(), max_total_degree);
  if (static_cast<int>(block.size()) > block_cap)
    throw std::length_error("unitarity_defect: block size exceeds cap");
  std::vector<Eigen::MatrixXd> gram_1d;
  gram_1d.reserve(base.size());
  for (int j = 0; j < base.size(); ++j)
    gram_1d.push_back(detail::mapped_gram_1d(base.weights[j], max_total_degree, quad_nodes));
  double defect = 0.0;
  for (size_t r = 0; r < block.size(); ++r) {
    for (size_t c = 0; c < block.size(); ++c) {
      double entry = 1.0;
      for (int j = 0; j < base.size(); ++j)
        entry *= gram_1d[j](block[r].degrees[j], block[c].degrees[j]);
      const double target = (r == c) ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(entry - target));
    }
  }
  return defect;
}

/// The same Gram matrix itself, for export.
inline Eigen::MatrixXd mapped_basis_gram(const FiniteBase& base, int max_total_degree,
                                         int quad_nodes = 200) {
  const std::vector<MultiIndex> block = multi_indices_up_to(base.size(), max_total_degree);
  std::vector<Eigen::MatrixXd> gram_1d;
  gram_1d.reserve(base.size());
  for (int j = 0; j < base.size(); ++j)
    gram_1d.push_back(detail::mapped_gram_1d(base.weights[j], max_total_degree, quad_nodes));
  Eigen::MatrixXd gram(block.size(), block.size());
  for (size_t r = 0; r < block.size(); ++r)
    for (size_t c = 0; c < block.size(); ++c) {
      double entry = 1.0;
      for (int j = 0; j < base.size(); ++j)
        entry *= gram_1d[j](block[r].degrees[j], block[c].degrees[j]);
      gram(r, c) = entry;
    }
  return gram;
}

}  // namespace levygauss
