// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "levygauss/orthopoly.hpp"

namespace levygauss {

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A singly generated functional of the white noise with total variance a,
/// written in the Hermite basis: F = sum coeff_n H_n.
struct GaussFunctional1D {
  std::map<int, double> hermite_coeffs;
  double a = 1.0;

  int max_degree() const { return hermite_coeffs.empty() ? 0 : hermite_coeffs.rbegin()->first; }
};

/// A singly generated functional of the Poisson process with rate a:
/// the sequence of values on counts k = 0..K.
struct PoissonFunctional1D {
  std::vector<double> values;
  double a = 1.0;
};

/// Kernel of the unitary map between L2(R, N(0,a)) and L2(Z+, P_a):
/// K(k, x) = e^{-a/2 - x} H_k(x + 2a) / a^k.
inline double kernel_1d(int k, double x, double a) {
  if (!(a > 0)) throw std::domain_error("kernel_1d: a must be positive");
  return std::exp(-0.5 * a - x) * hermite(k, a, x + 2.0 * a) / std::pow(a, k);
}

/// Smallest K with Poisson(a) tail mass P(N > K) below tail_mass, from the
/// exact regularized-gamma form of the CDF.
inline int poisson_tail_index(double a, double tail_mass) {
  int k = static_cast<int>(a) + 1;
  while (boost::math::gamma_p(static_cast<double>(k + 1), a) > tail_mass) ++k;
  return k;
}

/// sum_{k<=K} e^{-a} a^k/k! K(k,x): the inverse image of the constant 1,
/// equal to 1 for every x. Summed through H_k(x+2a)/k! in scaled form.
inline double kernel_row_sum(double a, double x, int truncation) {
  const double y = x + 2.0 * a;
  const double prefactor = std::exp(-1.5 * a - x);
  double sum = 0.0;
  double prev = 1.0, cur = y;  // H_k(y) / k!
  for (int k = 0; k <= truncation; ++k) {
    double h_over_fact;
    if (k == 0)
      h_over_fact = prev;
    else if (k == 1)
      h_over_fact = cur;
    else {
      const double next = (y * cur - a * prev) / k;
      prev = cur;
      cur = next;
      h_over_fact = cur;
    }
    sum += h_over_fact;
  }
  return prefactor * sum;
}

/// (Phi^-1 F)(x) = sum_k e^{-a} a^k / k! K(k, x) F(k), truncated at K.
inline double apply_inverse_isometry_1d(const PoissonFunctional1D& functional, double x,
                                        int truncation) {
  const double a = functional.a;
  if (!(a > 0)) throw std::domain_error("apply_inverse_isometry_1d: rate must be positive");
  if (truncation + 1 > static_cast<int>(functional.values.size()))
    throw std::invalid_argument("apply_inverse_isometry_1d: functional shorter than truncation");
  if (boost::math::gamma_p(static_cast<double>(truncation + 1), a) > 1e-12)
    throw PrecisionError("apply_inverse_isometry_1d: Poisson tail above 1e-12 at this truncation");
  const double y = x + 2.0 * a;
  const double prefactor = std::exp(-1.5 * a - x);
  double sum = 0.0;
  double prev = 1.0, cur = y;  // H_k(y) / k!
  for (int k = 0; k <= truncation; ++k) {
    double h_over_fact;
    if (k == 0)
      h_over_fact = prev;
    else if (k == 1)
      h_over_fact = cur;
    else {
      const double next = (y * cur - a * prev) / k;
      prev = cur;
      cur = next;
      h_over_fact = cur;
    }
    sum += h_over_fact * functional.values[k];
  }
  return prefactor * sum;
}

/// Image of a Hermite-coefficient functional: values sum_n c_n C_n(k). The
/// correspondence H_n <-> C_n preserves all inner products since both
/// families have norm^2 = a^n n!.
inline PoissonFunctional1D isometry_coefficients_1d(const GaussFunctional1D& functional,
                                                    int max_k = -1) {
  const double a = functional.a;
  if (!(a > 0)) throw std::domain_error("isometry_coefficients_1d: variance must be positive");
  if (max_k < 0) max_k = poisson_series_cutoff(a, 2 * functional.max_degree() + 2, 1e-16);
  PoissonFunctional1D out;
  out.a = a;
  out.values.resize(max_k + 1, 0.0);
  for (int k = 0; k <= max_k; ++k) {
    double v = 0.0;
    for (const auto& [n, coeff] : functional.hermite_coeffs)
      v += coeff * charlier(n, a, static_cast<double>(k));
    out.values[k] = v;
  }
  return out;
}

/// The two candidate series weights for the bilinear Hermite-Charlier sum
/// against the closed kernel form: a^n/n! versus 1/(a^n n!). Both candidates
/// coincide at a = 1; away from it exactly one can match, and the verdict
/// records which.
struct NormalizationVerdict {
  enum class Match { kNumerator, kDenominator, kBoth, kNeither };

  double closed_form = 0.0;
  double sum_a_in_numerator = 0.0;    // sum H_n(x) C_n(k) a^n / n!
  double sum_a_in_denominator = 0.0;  // sum H_n(x) C_n(k) / (a^n n!)
  double residual_numerator = 0.0;
  double residual_denominator = 0.0;
  double tolerance = 0.0;
  Match match = Match::kNeither;
};

inline NormalizationVerdict resolve_identity_normalization(double a, double x, int k, int terms,
                                                           double tolerance = 1e-8) {
  if (!(a > 0)) throw std::domain_error("resolve_identity_normalization: a must be positive");
  NormalizationVerdict verdict;
  verdict.tolerance = tolerance;
  verdict.closed_form = kernel_1d(k, x, a);
  const std::vector<double> u = normalized_hermite_values(terms, a, x);
  const std::vector<double> v = normalized_charlier_values(terms, a, k);
  double denom_sum = 0.0, numer_sum = 0.0, a_sq_pow = 1.0;
  for (int n = 0; n <= terms; ++n) {
    const double product = u[n] * v[n];  // H_n C_n / (a^n n!)
    denom_sum += product;
    if (product != 0.0 && std::isfinite(a_sq_pow))
      numer_sum += product * a_sq_pow;  // H_n C_n a^n / n!
    a_sq_pow *= a * a;
  }
  verdict.sum_a_in_denominator = denom_sum;
  verdict.sum_a_in_numerator = numer_sum;
  const double scale = std::max(1.0, std::abs(verdict.closed_form));
  verdict.residual_denominator = std::abs(denom_sum - verdict.closed_form) / scale;
  verdict.residual_numerator = std::abs(numer_sum - verdict.closed_form) / scale;
  const bool den_ok = verdict.residual_denominator < tolerance;
  const bool num_ok = verdict.residual_numerator < tolerance;
  using Match = NormalizationVerdict::Match;
  verdict.match = den_ok ? (num_ok ? Match::kBoth : Match::kDenominator)
                         : (num_ok ? Match::kNumerator : Match::kNeither);
  return verdict;
}

}  // namespace levygauss
