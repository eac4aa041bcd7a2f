// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "levygauss/combinatorics.hpp"
#include "levygauss/orthopoly.hpp"
#include "levygauss/processes.hpp"

namespace levygauss {

/// Piecewise-constant square-integrable function on [0,1]: one value per
/// cell of its partition. Inner products against other functions on the
/// same partition are exact weighted dot products.
struct TestFunction {
  PartitionOfBase partition;
  std::vector<double> values;

  TestFunction(PartitionOfBase cells, std::vector<double> cell_values)
      : partition(std::move(cells)), values(std::move(cell_values)) {
    if (static_cast<int>(values.size()) != partition.cell_count())
      throw std::invalid_argument("TestFunction: one value per cell required");
  }

  static TestFunction constant(double c) {
    return TestFunction(PartitionOfBase::uniform(1), {c});
  }

  double operator()(double x) const { return values[partition.cell_of(x)]; }

  double integral() const {
    double s = 0;
    for (size_t j = 0; j < values.size(); ++j) s += values[j] * partition.mass(static_cast<int>(j));
    return s;
  }

  /// int_lo^hi f dx, exact for the piecewise-constant representation.
  double integral_over(double lo, double hi) const {
    double s = 0;
    for (int j = 0; j < partition.cell_count(); ++j) {
      const double a = std::max(lo, partition.bounds[j]);
      const double b = std::min(hi, partition.bounds[j + 1]);
      if (b > a) s += values[j] * (b - a);
    }
    return s;
  }

  bool same_partition(const TestFunction& other) const {
    return partition.bounds == other.partition.bounds;
  }
};

inline double inner_product(const TestFunction& f, const TestFunction& g) {
  if (!f.same_partition(g)) throw std::invalid_argument("inner_product: partition mismatch");
  double s = 0;
  for (size_t j = 0; j < f.values.size(); ++j)
    s += f.values[j] * g.values[j] * f.partition.mass(static_cast<int>(j));
  return s;
}

inline double norm_squared(const TestFunction& f) { return inner_product(f, f); }

/// <f, eta> for a white-noise sample on the same partition.
inline double pair_with_noise(const TestFunction& f, const WhiteNoiseSample& eta) {
  if (f.values.size() != eta.cell_values.size())
    throw std::invalid_argument("pair_with_noise: partition mismatch");
  double s = 0;
  for (size_t j = 0; j < f.values.size(); ++j) s += f.values[j] * eta.cell_values[j];
  return s;
}

// ---------------------------------------------------------------------------
// Combinatorial cores. Both are plain sums over permutations, exact in any
// scalar ring, so the identities they satisfy can be checked in rational
// arithmetic with zero tolerance.
// ---------------------------------------------------------------------------

/// sum over involutions of prod linear[i] (fixed points) * prod -pair(j,k)
/// (2-cycles). pair_ip must be symmetric of size n x n.
template <class T>
T hermite_functional_core(const std::vector<T>& linear,
                          const std::vector<std::vector<T>>& pair_ip) {
  const int n = static_cast<int>(linear.size());
  T sum(0);
  for (const Permutation& g : enumerate_involutions(n)) {
    T prod(1);
    for (int i = 0; i < n; ++i) {
      if (g.images[i] == i)
        prod = prod * linear[i];
      else if (g.images[i] > i)
        prod = prod * (T(0) - pair_ip[i][g.images[i]]);
    }
    sum = sum + prod;
  }
  return sum;
}

/// sum over all permutations of (-1)^(n-c(g)) * prod centered[i] over fixed
/// points * prod cycle_sum(i_1..i_k) over longer cycles, where
/// cycle_sum(cycle) = sum_p prod_j point_values[i_j][p].
template <class T>
T charlier_functional_core(const std::vector<std::vector<T>>& point_values,
                           const std::vector<T>& centered) {
  const int n = static_cast<int>(centered.size());
  const size_t num_points = n > 0 ? point_values[0].size() : 0;
  T sum(0);
  for (const Permutation& g : enumerate_permutations(n)) {
    T prod(1);
    int cycles = 0;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      ++cycles;
      std::vector<int> cycle;
      for (int j = i; !seen[j]; j = g.images[j]) {
        seen[j] = true;
        cycle.push_back(j);
      }
      if (cycle.size() == 1) {
        prod = prod * centered[i];
      } else {
        T cycle_sum(0);
        for (size_t p = 0; p < num_points; ++p) {
          T term(1);
          for (int idx : cycle) term = term * point_values[idx][p];
          cycle_sum = cycle_sum + term;
        }
        prod = prod * cycle_sum;
      }
    }
    if ((n - cycles) % 2 == 0)
      sum = sum + prod;
    else
      sum = sum - prod;
  }
  return sum;
}

/// Generalized Hermite functional of order n on a white-noise sample.
inline double generalized_hermite(const std::vector<TestFunction>& fs,
                                  const WhiteNoiseSample& eta) {
  const int n = static_cast<int>(fs.size());
  std::vector<double> linear(n);
  std::vector<std::vector<double>> pair_ip(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    linear[i] = pair_with_noise(fs[i], eta);
    for (int j = i; j < n; ++j) pair_ip[i][j] = pair_ip[j][i] = inner_product(fs[i], fs[j]);
  }
  return hermite_functional_core(linear, pair_ip);
}

/// Generalized Charlier functional of order n on a point configuration.
inline double generalized_charlier(const std::vector<TestFunction>& fs,
                                   const PointConfiguration& omega) {
  const int n = static_cast<int>(fs.size());
  std::vector<std::vector<double>> point_values(n, std::vector<double>(omega.size()));
  std::vector<double> centered(n);
  for (int i = 0; i < n; ++i) {
    double s = 0;
    for (size_t p = 0; p < omega.size(); ++p) {
      point_values[i][p] = fs[i](omega.points[p].location);
      s += point_values[i][p];
    }
    centered[i] = s - fs[i].integral();
  }
  return charlier_functional_core(point_values, centered);
}

/// The two diagonal-measure rules of the combinatorial stochastic integral:
/// Gaussian (Delta_2 = base measure, higher diagonals vanish) and Poisson
/// (every higher diagonal is the configuration itself).
enum class DiagonalRule { kGaussian, kPoisson };

using Realization = std::variant<WhiteNoiseSample, PointConfiguration>;

/// Multiple stochastic integral evaluated directly from the permutation
/// expansion; a second code path that must agree with the generalized
/// Hermite/Charlier functionals exactly.
inline double rota_integral(const std::vector<TestFunction>& fs, DiagonalRule rule,
                            const Realization& realization) {
  const int n = static_cast<int>(fs.size());
  if (rule == DiagonalRule::kGaussian) {
    if (!std::holds_alternative<WhiteNoiseSample>(realization))
      throw std::invalid_argument("rota_integral: gaussian rule needs a white-noise sample");
    const auto& eta = std::get<WhiteNoiseSample>(realization);
    double sum = 0;
    for (const Permutation& g : enumerate_permutations(n)) {
      const CycleType type = cycle_type(g);
      bool vanishes = false;
      for (int len = 3; len <= n; ++len)
        if (type.counts[len - 1] > 0) vanishes = true;  // Delta_k = 0 for k >= 3
      if (vanishes) continue;
      double prod = 1;
      std::vector<bool> seen(n, false);
      int cycles = 0;
      for (int i = 0; i < n; ++i) {
        if (seen[i]) continue;
        ++cycles;
        seen[i] = true;
        if (g.images[i] == i) {
          prod *= pair_with_noise(fs[i], eta);
        } else {
          const int j = g.images[i];
          seen[j] = true;
          prod *= inner_product(fs[i], fs[j]);  // int f_i f_j dDelta_2
        }
      }
      sum += (((n - cycles) % 2 == 0) ? prod : -prod);
    }
    return sum;
  }
  if (!std::holds_alternative<PointConfiguration>(realization))
    throw std::invalid_argument("rota_integral: poisson rule needs a point configuration");
  return generalized_charlier(fs, std::get<PointConfiguration>(realization));
}

// ---------------------------------------------------------------------------
// Multiplicative functionals and their logarithm.
// ---------------------------------------------------------------------------

enum class FactorizationKind { kGauss, kPoisson };

/// Normalized multiplicative functional (unit expectation):
/// Gauss  e^{<h,eta> - ||h||^2/2},  Poisson  prod(1+h(x)) e^{-int h}.
inline double multiplicative_functional(FactorizationKind kind, const TestFunction& h,
                                        const Realization& realization) {
  if (kind == FactorizationKind::kGauss) {
    const auto& eta = std::get<WhiteNoiseSample>(realization);
    return std::exp(pair_with_noise(h, eta) - 0.5 * norm_squared(h));
  }
  const auto& omega = std::get<PointConfiguration>(realization);
  double prod = 1;
  for (const auto& p : omega.points) prod *= 1.0 + h(p.location);
  return prod * std::exp(-h.integral());
}

/// The factorization logarithm of the functional above:
/// Gauss <h, eta>, Poisson sum h(x) - int h.
inline double log_multiplicative(FactorizationKind kind, const TestFunction& h,
                                 const Realization& realization) {
  if (kind == FactorizationKind::kGauss)
    return pair_with_noise(h, std::get<WhiteNoiseSample>(realization));
  const auto& omega = std::get<PointConfiguration>(realization);
  double s = 0;
  for (const auto& p : omega.points) s += h(p.location);
  return s - h.integral();
}

/// E|F - 1 - G|^2 on one cell of the given mass with h = c there, summed
/// from the defining law: a Poisson series, or Gauss-Hermite quadrature.
/// Equals e^m - 1 - m with m = c^2 * mass.
inline double per_cell_log_defect(FactorizationKind kind, double c, double mass,
                                  int quad_nodes = 200) {
  if (kind == FactorizationKind::kPoisson) {
    const double ratio = (1.0 + c) * (1.0 + c);
    const int cutoff = poisson_series_cutoff(mass * std::max(1.0, ratio) + 1.0, 2, 1e-18);
    double sum = 0;
    for (int k = 0; k <= cutoff; ++k) {
      const double log_weight = -mass + k * std::log(mass) - std::lgamma(k + 1.0);
      const double f = std::pow(1.0 + c, k) * std::exp(-c * mass);
      const double g = c * k - c * mass;
      const double d = f - 1.0 - g;
      sum += std::exp(log_weight) * d * d;
    }
    return sum;
  }
  const QuadratureRule& rule = gauss_hermite_rule(quad_nodes);
  const double sigma = std::sqrt(mass);
  double sum = 0;
  for (size_t q = 0; q < rule.nodes.size(); ++q) {
    const double eta = sigma * rule.nodes[q];
    const double f = std::exp(c * eta - 0.5 * c * c * mass);
    const double d = f - 1.0 - c * eta;
    sum += rule.weights[q] * d * d;
  }
  return sum;
}

struct ProfilePoint {
  double delta;        // max cell value of m_F = int_A h^2
  double distance_sq;  // MC estimate of || sum_k (F_k - 1) - LOG F ||^2
};

/// Monte Carlo profile of the logarithm approximation across a sequence of
/// partitions. The same realizations are reused for every partition, so the
/// profile is smooth in the refinement.
inline std::vector<ProfilePoint> log_convergence_profile(
    FactorizationKind kind, const TestFunction& h, const std::vector<PartitionOfBase>& partitions,
    int samples, std::uint64_t seed) {
  std::vector<ProfilePoint> profile;
  profile.reserve(partitions.size());
  // Fine grid for Gauss sampling: union of h's partition and all profile
  // partitions, so one noise sample serves every partition.
  std::vector<double> grid = h.partition.bounds;
  for (const auto& part : partitions)
    grid.insert(grid.end(), part.bounds.begin(), part.bounds.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  const PartitionOfBase fine(grid);

  for (size_t pi = 0; pi < partitions.size(); ++pi) {
    const PartitionOfBase& part = partitions[pi];
    double delta = 0;
    for (int j = 0; j < part.cell_count(); ++j) {
      double m = 0;
      for (int f = 0; f < fine.cell_count(); ++f) {
        const double lo = std::max(part.bounds[j], fine.bounds[f]);
        const double hi = std::min(part.bounds[j + 1], fine.bounds[f + 1]);
        if (hi > lo) {
          const double hv = h(0.5 * (fine.bounds[f] + fine.bounds[f + 1]));
          m += hv * hv * (hi - lo);
        }
      }
      delta = std::max(delta, m);
    }
    double acc = 0;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(seed, static_cast<std::uint64_t>(s));
      double difference;
      if (kind == FactorizationKind::kPoisson) {
        const PointConfiguration omega = sample_poisson_config(1.0, rng);
        double total_log = 0;
        double sum_f_minus_1 = 0;
        for (int j = 0; j < part.cell_count(); ++j) {
          const double lo = part.bounds[j], hi = part.bounds[j + 1];
          double prod = 1, cell_sum = 0;
          for (const auto& p : omega.points) {
            if (p.location >= lo && p.location < hi) {
              prod *= 1.0 + h(p.location);
              cell_sum += h(p.location);
            }
          }
          const double compensator = h.integral_over(lo, hi);
          sum_f_minus_1 += prod * std::exp(-compensator) - 1.0;
          total_log += cell_sum - compensator;
        }
        difference = sum_f_minus_1 - total_log;
      } else {
        const WhiteNoiseSample eta = sample_white_noise(fine, rng);
        double sum_f_minus_1 = 0, total_log = 0;
        for (int j = 0; j < part.cell_count(); ++j) {
          const double lo = part.bounds[j], hi = part.bounds[j + 1];
          double pairing = 0, m = 0;
          for (int f = 0; f < fine.cell_count(); ++f) {
            const double clo = std::max(lo, fine.bounds[f]);
            const double chi = std::min(hi, fine.bounds[f + 1]);
            if (chi > clo) {
              const double hv = h(0.5 * (fine.bounds[f] + fine.bounds[f + 1]));
              pairing += hv * eta.cell_values[f];
              m += hv * hv * (chi - clo);
            }
          }
          sum_f_minus_1 += std::exp(pairing - 0.5 * m) - 1.0;
          total_log += pairing;
        }
        difference = sum_f_minus_1 - total_log;
      }
      acc += difference * difference;
    }
    profile.push_back({delta, acc / samples});
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Monte Carlo Gram matrices of chaos functionals.
// ---------------------------------------------------------------------------

/// One chaos entry: the order-n generalized functional built from n test
/// functions (order 0 is the constant 1).
struct ChaosEntry {
  int order;
  std::vector<TestFunction> fs;
};

inline constexpr int kMonteCarloOrderCap = 6;

struct GramEstimate {
  Eigen::MatrixXd mean;
  Eigen::MatrixXd std_error;
};

/// MC Gram matrix of chaos functionals over the given factorization with
/// total base mass 1. Distinct orders are orthogonal, so off-diagonal
/// blocks estimate zero.
inline GramEstimate chaos_gram_mc(FactorizationKind kind, const std::vector<ChaosEntry>& entries,
                                  int samples, std::uint64_t seed) {
  const int n_entries = static_cast<int>(entries.size());
  for (const auto& e : entries) {
    if (e.order > kMonteCarloOrderCap)
      throw std::length_error("chaos_gram_mc: order exceeds Monte Carlo cap");
    if (static_cast<int>(e.fs.size()) != e.order)
      throw std::invalid_argument("chaos_gram_mc: order must match the function count");
  }
  // Gauss realizations live on the common partition of all test functions.
  const PartitionOfBase* common = nullptr;
  for (const auto& e : entries)
    for (const auto& f : e.fs) {
      if (common && f.partition.bounds != common->bounds)
        throw std::invalid_argument("chaos_gram_mc: all functions must share a partition");
      common = &f.partition;
    }
  static const PartitionOfBase trivial = PartitionOfBase::uniform(1);
  if (!common) common = &trivial;

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n_entries, n_entries);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(n_entries, n_entries);
  std::vector<double> values(n_entries);
  for (int s = 0; s < samples; ++s) {
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    if (kind == FactorizationKind::kGauss) {
      const WhiteNoiseSample eta = sample_white_noise(*common, rng);
      for (int i = 0; i < n_entries; ++i)
        values[i] = entries[i].order == 0 ? 1.0 : generalized_hermite(entries[i].fs, eta);
    } else {
      const PointConfiguration omega = sample_poisson_config(1.0, rng);
      for (int i = 0; i < n_entries; ++i)
        values[i] = entries[i].order == 0 ? 1.0 : generalized_charlier(entries[i].fs, omega);
    }
    for (int i = 0; i < n_entries; ++i)
      for (int j = 0; j < n_entries; ++j) {
        const double v = values[i] * values[j];
        sum(i, j) += v;
        sum_sq(i, j) += v * v;
      }
  }
  GramEstimate out;
  out.mean = sum / samples;
  out.std_error.resize(n_entries, n_entries);
  for (int i = 0; i < n_entries; ++i)
    for (int j = 0; j < n_entries; ++j) {
      const double variance =
          std::max(0.0, sum_sq(i, j) / samples - out.mean(i, j) * out.mean(i, j));
      out.std_error(i, j) = std::sqrt(variance / samples);
    }
  return out;
}

}  // namespace levygauss
