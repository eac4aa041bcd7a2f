// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>

namespace levygauss {

/// Arbitrary-precision integers and rationals used wherever an identity
/// must hold with zero tolerance.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

/// base^e for nonnegative integer exponents; works for any ring-like scalar.
template <class T>
T pow_int(T base, long long e) {
  if (e < 0) throw std::domain_error("pow_int: negative exponent");
  T result(1);
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

inline BigInt factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt b = 1;
  for (int i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return b;
}

/// x(x-1)...(x-k+1); the polynomial extension of k! * C(x,k).
template <class T>
T falling_factorial(const T& x, int k) {
  T result(1);
  for (int i = 0; i < k; ++i) result = result * (x - T(i));
  return result;
}

}  // namespace levygauss
