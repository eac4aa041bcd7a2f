// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace levygauss {

/// Counter-based generator keyed by (seed, stream). Output i depends only on
/// the key and the counter, so any sampled object is reproducible no matter
/// how work is scheduled. Uses the SplitMix64 finalizer in counter mode.
///
/// All distribution samplers are implemented here rather than taken from
/// <random>, whose distributions are implementation-defined; identical
/// seeds must give bit-identical streams.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_(mix64(mix64(seed ^ kGolden) + stream)) {}

  std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

  /// Uniform on [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1]; safe to pass to log().
  double uniform_positive() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform integer in {0,...,n-1}.
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double exponential() { return -std::log(uniform_positive()); }

  /// Poisson count by the product-of-uniforms method; fine for the
  /// moderate means used here.
  int poisson(double mean) {
    if (mean < 0) throw std::domain_error("poisson: negative mean");
    if (mean == 0) return 0;
    if (mean > 500) throw std::domain_error("poisson: mean too large for product method");
    const double threshold = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform_positive();
    } while (p > threshold);
    return k - 1;
  }

  /// Gamma(shape, 1) by Marsaglia-Tsang, with the boost step for shape < 1.
  double gamma(double shape) {
    if (shape < 0) throw std::domain_error("gamma: negative shape");
    if (shape == 0) return 0.0;
    if (shape < 1) {
      const double u = uniform_positive();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_positive();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// FNV-1a of a name; used to derive per-check stream ids from one seed.
inline std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace levygauss
