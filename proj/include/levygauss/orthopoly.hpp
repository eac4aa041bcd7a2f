// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "levygauss/exact.hpp"
#include "levygauss/quadrature.hpp"

namespace levygauss {

/// Weight N(0,a): centered normal law with variance a.
struct GaussianWeight {
  double a;
  explicit GaussianWeight(double variance) : a(variance) {
    if (!(a > 0)) throw std::domain_error("GaussianWeight: variance must be positive");
  }
};

/// Weight P_a: Poisson law on Z+ with rate a.
struct PoissonWeight {
  double a;
  explicit PoissonWeight(double rate) : a(rate) {
    if (!(a > 0)) throw std::domain_error("PoissonWeight: rate must be positive");
  }
};

namespace detail {
template <class T>
void require_positive_parameter(const T& a, const char* who) {
  if (!(a > T(0))) throw std::domain_error(std::string(who) + ": parameter must be positive");
}
}  // namespace detail

/// Scaled Hermite polynomial H_n with variance parameter a, by the
/// three-term recurrence H_{n+1} = x H_n - a n H_{n-1}.
/// Orthogonal under N(0,a) with norm^2 = a^n n!.
template <class T>
T hermite(int n, const T& a, const T& x) {
  detail::require_positive_parameter(a, "hermite");
  if (n < 0) throw std::domain_error("hermite: negative degree");
  T prev(1), cur = x;
  if (n == 0) return prev;
  for (int m = 1; m < n; ++m) {
    T next = x * cur - a * T(m) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Definitional sum (expansion of the Rodrigues form):
/// H_n = sum_m (-1)^m n!/(m! (n-2m)! 2^m) a^m x^(n-2m).
template <class T>
T hermite_sum(int n, const T& a, const T& x) {
  detail::require_positive_parameter(a, "hermite_sum");
  if (n < 0) throw std::domain_error("hermite_sum: negative degree");
  T sum(0);
  for (int m = 0; 2 * m <= n; ++m) {
    BigInt coef = factorial(n) / (factorial(m) * factorial(n - 2 * m) * pow_int(BigInt(2), m));
    T term = static_cast<T>(coef) * pow_int(a, m) * pow_int(x, n - 2 * m);
    if (m % 2 == 0)
      sum = sum + term;
    else
      sum = sum - term;
  }
  return sum;
}

/// Charlier polynomial with rate a, through the recurrence
/// C_{n+1} = (x - n - a) C_n - a n C_{n-1}; C_1 = x - a.
/// Orthogonal under P_a with norm^2 = a^n n!.
template <class T>
T charlier(int n, const T& a, const T& x) {
  detail::require_positive_parameter(a, "charlier");
  if (n < 0) throw std::domain_error("charlier: negative degree");
  T prev(1), cur = x - a;
  if (n == 0) return prev;
  for (int m = 1; m < n; ++m) {
    T next = (x - T(m) - a) * cur - a * T(m) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Definitional sum C_n = a^n sum_j (-1)^(n-j) C(n,j) a^(-j) x(x-1)...(x-j+1).
template <class T>
T charlier_sum(int n, const T& a, const T& x) {
  detail::require_positive_parameter(a, "charlier_sum");
  if (n < 0) throw std::domain_error("charlier_sum: negative degree");
  T sum(0);
  for (int j = 0; j <= n; ++j) {
    T term = static_cast<T>(binomial(n, j)) * pow_int(a, n - j) * falling_factorial(x, j);
    if ((n - j) % 2 == 0)
      sum = sum + term;
    else
      sum = sum - term;
  }
  return sum;
}

/// Generalized Laguerre polynomial L_n^(alpha) by the standard recurrence
/// (n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}.
template <class T>
T laguerre(int n, const T& alpha, const T& x) {
  if (n < 0) throw std::domain_error("laguerre: negative degree");
  T prev(1), cur = T(1) + alpha - x;
  if (n == 0) return prev;
  for (int m = 1; m < n; ++m) {
    T next = ((T(2 * m + 1) + alpha - x) * cur - (T(m) + alpha) * prev) / T(m + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

// Monomial coefficient vectors, lowest degree first.

template <class T>
std::vector<T> polynomial_shift_multiply_x(const std::vector<T>& p) {
  std::vector<T> q(p.size() + 1, T(0));
  for (size_t i = 0; i < p.size(); ++i) q[i + 1] = p[i];
  return q;
}

template <class T>
std::vector<T> hermite_coefficients(int n, const T& a) {
  detail::require_positive_parameter(a, "hermite_coefficients");
  std::vector<T> prev{T(1)}, cur{T(0), T(1)};
  if (n == 0) return prev;
  for (int m = 1; m < n; ++m) {
    std::vector<T> next = polynomial_shift_multiply_x(cur);
    for (size_t i = 0; i < prev.size(); ++i) next[i] = next[i] - a * T(m) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

template <class T>
std::vector<T> charlier_coefficients(int n, const T& a) {
  detail::require_positive_parameter(a, "charlier_coefficients");
  std::vector<T> prev{T(1)}, cur{-a, T(1)};
  if (n == 0) return prev;
  for (int m = 1; m < n; ++m) {
    std::vector<T> next = polynomial_shift_multiply_x(cur);
    next.resize(std::max(next.size(), prev.size()), T(0));
    for (size_t i = 0; i < cur.size(); ++i) next[i] = next[i] - (T(m) + a) * cur[i];
    for (size_t i = 0; i < prev.size(); ++i) next[i] = next[i] - a * T(m) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

template <class T>
std::vector<T> laguerre_coefficients(int n, const T& alpha) {
  std::vector<T> prev{T(1)}, cur{T(1) + alpha, T(-1)};
  if (n == 0) return prev;
  for (int m = 1; m < n; ++m) {
    std::vector<T> next = polynomial_shift_multiply_x(cur);
    next.resize(std::max(next.size(), prev.size()), T(0));
    for (auto& c : next) c = -c;
    for (size_t i = 0; i < cur.size(); ++i) next[i] = next[i] + (T(2 * m + 1) + alpha) * cur[i];
    for (size_t i = 0; i < prev.size(); ++i) next[i] = next[i] - (T(m) + alpha) * prev[i];
    for (auto& c : next) c = c / T(m + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

template <class T>
T evaluate_polynomial(const std::vector<T>& coeffs, const T& x) {
  T value(0);
  for (size_t i = coeffs.size(); i-- > 0;) value = value * x + coeffs[i];
  return value;
}

/// Values H_m(y)/sqrt(a^m m!) for m = 0..max_degree; magnitudes stay
/// moderate, which keeps long series summable in double precision.
inline std::vector<double> normalized_hermite_values(int max_degree, double a, double y) {
  std::vector<double> u(max_degree + 1);
  u[0] = 1.0;
  if (max_degree == 0) return u;
  u[1] = y / std::sqrt(a);
  for (int m = 1; m < max_degree; ++m)
    u[m + 1] = (y * u[m] - std::sqrt(a * m) * u[m - 1]) / std::sqrt(a * (m + 1));
  return u;
}

/// Values C_m(k)/sqrt(a^m m!) for m = 0..max_degree at an integer point k.
/// The ascending-degree recurrence is useless here (the true values are the
/// minimal solution and forward errors grow factorially), so each value is
/// taken through the reflection C_m(k) = (-1)^(m+k) a^(m-k) C_k(m), a
/// degree-k sum that stays stable for every m.
inline std::vector<double> normalized_charlier_values(int max_degree, double a, int k) {
  std::vector<double> v(max_degree + 1);
  const double log_a = std::log(a);
  for (int m = 0; m <= max_degree; ++m) {
    const double log_scale = 0.5 * (m * log_a - std::lgamma(m + 1.0)) - k * log_a;
    const double reflected = charlier_sum(k, a, static_cast<double>(m));
    const double sign = ((m + k) % 2 == 0) ? 1.0 : -1.0;
    v[m] = sign * std::exp(log_scale) * reflected;
  }
  return v;
}

struct InnerProductResult {
  double value = 0.0;
  bool precise = true;  // false when the requested resolution cannot cover the degree
};

/// Smallest truncation index K with the Chernoff bound on the Poisson tail,
/// inflated by K^degree for polynomial integrands, below tail_target.
inline int poisson_series_cutoff(double a, int degree, double tail_target, int hard_cap = 1 << 16) {
  int k = static_cast<int>(std::ceil(a)) + 2;
  const double log_target = std::log(tail_target);
  while (k < hard_cap) {
    // log of e^{-a} (ea/k)^k, plus degree * log k
    const double log_bound = -a + k * (1.0 + std::log(a / k)) + degree * std::log(static_cast<double>(k));
    if (log_bound < log_target) return k;
    ++k;
  }
  return hard_cap;
}

/// Integral of p*q against N(0,a) via Gauss-Hermite quadrature.
inline InnerProductResult weighted_inner_product(const std::vector<double>& p,
                                                 const std::vector<double>& q,
                                                 const GaussianWeight& w, int resolution = 200) {
  InnerProductResult result;
  const int degree = static_cast<int>(p.size() + q.size()) - 2;
  result.precise = (2 * resolution - 1 >= degree);
  const QuadratureRule& rule = gauss_hermite_rule(resolution);
  const double scale = std::sqrt(w.a);
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = scale * rule.nodes[i];
    sum += rule.weights[i] * evaluate_polynomial(p, x) * evaluate_polynomial(q, x);
  }
  result.value = sum;
  return result;
}

/// Sum of p*q against P_a, truncated where the bounded tail drops below 1e-16.
inline InnerProductResult weighted_inner_product(const std::vector<double>& p,
                                                 const std::vector<double>& q,
                                                 const PoissonWeight& w, int max_terms = 1 << 16) {
  InnerProductResult result;
  const int degree = static_cast<int>(p.size() + q.size()) - 2;
  const int cutoff = poisson_series_cutoff(w.a, degree, 1e-16, max_terms);
  result.precise = (cutoff < max_terms);
  double sum = 0.0;
  double log_a = std::log(w.a);
  for (int k = 0; k <= cutoff; ++k) {
    const double log_weight = -w.a + k * log_a - std::lgamma(k + 1.0);
    const double x = static_cast<double>(k);
    sum += std::exp(log_weight) * evaluate_polynomial(p, x) * evaluate_polynomial(q, x);
  }
  result.value = sum;
  return result;
}

enum class PolynomialFamily { kHermite, kCharlier };

/// |sum_{n<=N} P_n t^n/n! - closed form| for the two generating functions
/// e^{tx - t^2 a/2} (Hermite) and (1+t)^y e^{-ta} (Charlier).
inline double generating_function_residual(PolynomialFamily family, double a, double point,
                                           double t, int truncation) {
  if (!(a > 0)) throw std::domain_error("generating_function_residual: parameter must be positive");
  double sum = 0.0;
  double prev = 1.0, cur = 0.0;  // values P_n / n!
  double t_pow = 1.0;
  for (int n = 0; n <= truncation; ++n) {
    double value_over_fact;
    if (n == 0) {
      value_over_fact = 1.0;
    } else if (n == 1) {
      cur = (family == PolynomialFamily::kHermite) ? point : point - a;
      value_over_fact = cur;
    } else {
      double next;
      if (family == PolynomialFamily::kHermite)
        next = (point * cur - a * prev) / n;
      else
        next = ((point - (n - 1) - a) * cur - a * prev) / n;
      prev = cur;
      cur = next;
      value_over_fact = cur;
    }
    sum += value_over_fact * t_pow;
    t_pow *= t;
  }
  const double closed = (family == PolynomialFamily::kHermite)
                            ? std::exp(t * point - t * t * a / 2.0)
                            : std::pow(1.0 + t, point) * std::exp(-t * a);
  return std::abs(sum - closed);
}

/// Exact verdict for (-1)^n/a^n C_n(k) == (-1)^k/a^k C_k(n).
inline bool charlier_reflection_check(int n, int k, const Rational& a) {
  const Rational lhs = charlier_sum(n, a, Rational(k)) / pow_int(a, n) * ((n % 2) ? -1 : 1);
  const Rational rhs = charlier_sum(k, a, Rational(n)) / pow_int(a, k) * ((k % 2) ? -1 : 1);
  return lhs == rhs;
}

}  // namespace levygauss
