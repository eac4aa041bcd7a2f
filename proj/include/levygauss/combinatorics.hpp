// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "levygauss/exact.hpp"

namespace levygauss {

/// A permutation of {0,...,n-1} in one-line notation: images[i] = g(i).
struct Permutation {
  std::vector<int> images;

  int degree() const { return static_cast<int>(images.size()); }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (images[i] != i) return false;
    return true;
  }
};

inline bool is_valid_permutation(const Permutation& g) {
  const int n = g.degree();
  std::vector<bool> seen(n, false);
  for (int v : g.images) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

inline Permutation compose(const Permutation& g, const Permutation& h) {
  // (g*h)(i) = g(h(i))
  Permutation out;
  out.images.resize(h.images.size());
  for (size_t i = 0; i < h.images.size(); ++i) out.images[i] = g.images[h.images[i]];
  return out;
}

/// counts[k-1] = number of cycles of length k.
struct CycleType {
  std::vector<int> counts;

  int degree() const {
    int n = 0;
    for (size_t k = 0; k < counts.size(); ++k) n += static_cast<int>(k + 1) * counts[k];
    return n;
  }

  int cycle_count() const { return std::accumulate(counts.begin(), counts.end(), 0); }
};

/// A partition of a finite ground set into blocks of size at most two.
struct PartitionLe2 {
  std::vector<int> singletons;
  std::vector<std::pair<int, int>> pairs;
};

inline constexpr int kInvolutionCap = 10;   // enumerate_involutions / partitions
inline constexpr int kEnumerationCap = 8;   // full symmetric-group enumeration

inline CycleType cycle_type(const Permutation& g) {
  if (!is_valid_permutation(g)) throw std::invalid_argument("cycle_type: not a permutation");
  const int n = g.degree();
  CycleType t;
  t.counts.assign(n, 0);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = g.images[j]) {
      seen[j] = true;
      ++len;
    }
    ++t.counts[len - 1];
  }
  return t;
}

namespace detail {

inline void build_involutions(int n, std::vector<int>& image, std::vector<bool>& used,
                              std::vector<Permutation>& out) {
  int i = 0;
  while (i < n && used[i]) ++i;
  if (i == n) {
    Permutation g;
    g.images = image;
    out.push_back(std::move(g));
    return;
  }
  used[i] = true;
  image[i] = i;  // fixed point
  build_involutions(n, image, used, out);
  for (int j = i + 1; j < n; ++j) {
    if (used[j]) continue;
    used[j] = true;
    image[i] = j;
    image[j] = i;
    build_involutions(n, image, used, out);
    used[j] = false;
  }
  image[i] = i;
  used[i] = false;
}

}  // namespace detail

/// All g with g*g = id, in a deterministic order. Count satisfies
/// I(n) = I(n-1) + (n-1) I(n-2).
inline std::vector<Permutation> enumerate_involutions(int n, int cap = kInvolutionCap) {
  if (n < 0) throw std::invalid_argument("enumerate_involutions: negative degree");
  if (n > cap) throw std::length_error("enumerate_involutions: degree exceeds cap");
  std::vector<Permutation> out;
  std::vector<int> image(n);
  std::vector<bool> used(n, false);
  detail::build_involutions(n, image, used, out);
  return out;
}

inline std::vector<Permutation> enumerate_permutations(int n, int cap = kEnumerationCap) {
  if (n < 0) throw std::invalid_argument("enumerate_permutations: negative degree");
  if (n > cap) throw std::length_error("enumerate_permutations: degree exceeds cap");
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation{image});
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

inline std::vector<PartitionLe2> enumerate_partitions_le2(const std::vector<int>& ground,
                                                          int cap = kInvolutionCap) {
  const int n = static_cast<int>(ground.size());
  if (n > cap) throw std::length_error("enumerate_partitions_le2: ground set exceeds cap");
  // An involution and a <=2-block partition are the same data: fixed points
  // are singletons, 2-cycles are pairs.
  std::vector<PartitionLe2> out;
  for (const Permutation& g : enumerate_involutions(n, cap)) {
    PartitionLe2 p;
    for (int i = 0; i < n; ++i) {
      if (g.images[i] == i)
        p.singletons.push_back(ground[i]);
      else if (g.images[i] > i)
        p.pairs.emplace_back(ground[i], ground[g.images[i]]);
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Sum over the symmetric group of degree n of prod_k t[k-1]^(#k-cycles),
/// evaluated by brute-force enumeration.
template <class T>
T augmented_cycle_index_enumerated(int n, const std::vector<T>& t, int cap = kEnumerationCap) {
  if (static_cast<int>(t.size()) < n) throw std::invalid_argument("cycle index: short t");
  T sum(0);
  for (const Permutation& g : enumerate_permutations(n, cap)) {
    CycleType c = cycle_type(g);
    T prod(1);
    for (int k = 1; k <= n; ++k)
      for (int rep = 0; rep < c.counts[k - 1]; ++rep) prod = prod * t[k - 1];
    sum = sum + prod;
  }
  return sum;
}

/// Same value through the recurrence B_n = sum_i (n-1)!/(n-i)! t_i B_{n-i}
/// implied by the exponential generating function exp(sum t_i z^i / i).
template <class T>
T augmented_cycle_index_recurrence(int n, const std::vector<T>& t) {
  if (static_cast<int>(t.size()) < n) throw std::invalid_argument("cycle index: short t");
  std::vector<T> b;  // b[m] = B_m / m!
  b.reserve(n + 1);
  b.push_back(T(1));
  for (int m = 1; m <= n; ++m) {
    T acc(0);
    for (int i = 1; i <= m; ++i) acc = acc + t[i - 1] * b[m - i];
    b.push_back(acc / T(m));
  }
  T result = b[n];
  for (int m = 2; m <= n; ++m) result = result * T(m);
  return result;
}

template <class T>
T augmented_cycle_index(int n, const std::vector<T>& t) {
  if (n <= kEnumerationCap) return augmented_cycle_index_enumerated(n, t);
  return augmented_cycle_index_recurrence(n, t);
}

/// Coefficients (up to degree N) of the product of two truncated power series.
template <class T>
std::vector<T> power_series_product(const std::vector<T>& a, const std::vector<T>& b, int N) {
  std::vector<T> c(N + 1, T(0));
  for (int i = 0; i <= N && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= N && j < static_cast<int>(b.size()); ++j)
      c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

/// exp of a power series with zero constant term, summed as sum_j s^j / j!.
template <class T>
std::vector<T> power_series_exp(const std::vector<T>& s, int N) {
  if (!s.empty() && !(s[0] == T(0)))
    throw std::invalid_argument("power_series_exp: nonzero constant term");
  std::vector<T> result(N + 1, T(0));
  result[0] = T(1);
  std::vector<T> term(N + 1, T(0));
  term[0] = T(1);
  T jfact(1);
  for (int j = 1; j <= N; ++j) {
    term = power_series_product(term, s, N);
    jfact = jfact * T(j);
    bool all_zero = true;
    for (int d = 0; d <= N; ++d) {
      result[d] = result[d] + term[d] / jfact;
      if (!(term[d] == T(0))) all_zero = false;
    }
    if (all_zero) break;
  }
  return result;
}

/// Coefficients of sum_n Z(S_n)[t] z^n / n! up to degree N, with the cycle
/// index values produced by the recurrence path.
template <class T>
std::vector<T> cycle_index_egf(const std::vector<T>& t, int N) {
  std::vector<T> coeffs(N + 1, T(0));
  T nfact(1);
  for (int n = 0; n <= N; ++n) {
    if (n >= 2) nfact = nfact * T(n);
    coeffs[n] = augmented_cycle_index_recurrence(n, t) / nfact;
  }
  return coeffs;
}

}  // namespace levygauss
