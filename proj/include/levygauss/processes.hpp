// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "levygauss/rng.hpp"

namespace levygauss {

/// A finite realization of a (marked) point process on the base X = [0,1]
/// with Lebesgue intensity. Plain Poisson configurations carry mark 1.
struct MarkedPoint {
  double location;
  double mark;
};

struct PointConfiguration {
  std::vector<MarkedPoint> points;

  std::size_t size() const { return points.size(); }
};

/// A partition of [0,1] into consecutive cells, stored as boundaries
/// 0 = b_0 <= b_1 <= ... <= b_m = 1. Cell masses are the widths.
struct PartitionOfBase {
  std::vector<double> bounds;

  explicit PartitionOfBase(std::vector<double> boundaries) : bounds(std::move(boundaries)) {
    if (bounds.size() < 2 || bounds.front() != 0.0 || bounds.back() != 1.0)
      throw std::invalid_argument("PartitionOfBase: boundaries must run from 0 to 1");
    for (size_t i = 1; i < bounds.size(); ++i)
      if (bounds[i] < bounds[i - 1])
        throw std::invalid_argument("PartitionOfBase: boundaries must be nondecreasing");
  }

  static PartitionOfBase uniform(int cells) {
    std::vector<double> b(cells + 1);
    for (int i = 0; i <= cells; ++i) b[i] = static_cast<double>(i) / cells;
    b.back() = 1.0;
    return PartitionOfBase(std::move(b));
  }

  int cell_count() const { return static_cast<int>(bounds.size()) - 1; }
  double mass(int cell) const { return bounds[cell + 1] - bounds[cell]; }

  int cell_of(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("PartitionOfBase: point outside base");
    int lo = 0, hi = cell_count() - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (x < bounds[mid + 1])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }
};

struct WhiteNoiseSample {
  std::vector<double> cell_values;
};

/// Jump measure of a Levy triple: a finite list of atoms (t_i, mass_i) or
/// the gamma measure e^{-t}/t dt on t > 0. A Dirac measure is the
/// single-atom case.
struct FiniteAtomicMeasure {
  std::vector<std::pair<double, double>> atoms;  // (jump size, mass)

  double total_mass() const {
    double s = 0;
    for (const auto& [t, m] : atoms) s += m;
    return s;
  }
};

struct GammaMeasure {};

using LevyMeasure = std::variant<FiniteAtomicMeasure, GammaMeasure>;

inline FiniteAtomicMeasure dirac_measure(double t0, double mass = 1.0) {
  return FiniteAtomicMeasure{{{t0, mass}}};
}

struct LevySpec {
  double drift = 0.0;
  double gaussian_variance = 0.0;
  LevyMeasure levy_measure = FiniteAtomicMeasure{};

  bool has_jumps() const {
    if (std::holds_alternative<GammaMeasure>(levy_measure)) return true;
    return !std::get<FiniteAtomicMeasure>(levy_measure).atoms.empty();
  }
};

inline LevySpec gaussian_spec(double variance) { return LevySpec{0.0, variance, FiniteAtomicMeasure{}}; }

/// The Poisson process seen as a Levy process: sigma = 0, jumps delta_1,
/// drift 1/2 (which cancels the t/(1+t^2) compensator at t = 1).
inline LevySpec poisson_spec() { return LevySpec{0.5, 0.0, dirac_measure(1.0)}; }

inline LevySpec gamma_spec() { return LevySpec{0.0, 0.0, GammaMeasure{}}; }

/// Mass of the gamma measure above eps: E_1(eps).
inline double gamma_tail_mass(double eps) {
  if (!(eps > 0)) throw std::domain_error("gamma_tail_mass: eps must be positive");
  if (eps > 700) return 0.0;
  return boost::math::expint(1, eps);
}

/// int_eps^inf t^j e^{-t}/t dt; j >= 1 gives the upper incomplete gamma.
inline double gamma_measure_moment(int j, double eps) {
  if (j == 0) return gamma_tail_mass(eps);
  if (eps <= 0) return boost::math::tgamma(static_cast<double>(j));
  return boost::math::tgamma(static_cast<double>(j), eps);
}

inline PointConfiguration sample_poisson_config(double mass, CounterRng& rng) {
  if (mass < 0) throw std::domain_error("sample_poisson_config: negative mass");
  PointConfiguration config;
  const int n = rng.poisson(mass);
  config.points.reserve(n);
  for (int i = 0; i < n; ++i) config.points.push_back({rng.uniform(), 1.0});
  return config;
}

inline WhiteNoiseSample sample_white_noise(const PartitionOfBase& partition, CounterRng& rng) {
  WhiteNoiseSample sample;
  sample.cell_values.resize(partition.cell_count());
  for (int j = 0; j < partition.cell_count(); ++j)
    sample.cell_values[j] = std::sqrt(partition.mass(j)) * rng.normal();
  return sample;
}

namespace detail {

/// One jump size from the density e^{-t}/t restricted to (eps, inf),
/// by rejection: log-uniform proposal on (eps,1), shifted-exponential
/// proposal on (1,inf).
inline double sample_gamma_jump(double eps, CounterRng& rng) {
  if (eps >= 1.0) {
    for (;;) {
      const double t = eps + rng.exponential();
      if (rng.uniform() < eps / t) return t;
    }
  }
  const double w1 = std::log(1.0 / eps);
  const double w2 = std::exp(-1.0);
  for (;;) {
    if (rng.uniform() * (w1 + w2) < w1) {
      const double t = eps * std::exp(w1 * rng.uniform());
      if (rng.uniform() < std::exp(-t)) return t;
    } else {
      const double t = 1.0 + rng.exponential();
      if (rng.uniform() < 1.0 / t) return t;
    }
  }
}

}  // namespace detail

/// Marked Poisson configuration on [0,1] x R_+ with mean Lebesgue x Pi.
/// Gamma jump measures are truncated to sizes above eps; the neglected
/// contribution to first moments is at most eps. Finite atomic measures
/// are sampled exactly, and a single atom consumes no mark randomness, so
/// a Dirac spec reproduces sample_poisson_config draw for draw.
inline PointConfiguration sample_levy(const LevySpec& spec, double eps, CounterRng& rng) {
  if (spec.gaussian_variance != 0.0)
    throw std::invalid_argument("sample_levy: jump sampler requires zero gaussian part");
  PointConfiguration config;
  if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&spec.levy_measure)) {
    if (atomic->atoms.empty()) return config;
    for (const auto& [t, m] : atomic->atoms)
      if (!(m > 0)) throw std::invalid_argument("sample_levy: atom masses must be positive");
    const double total = atomic->total_mass();
    const int n = rng.poisson(total);
    config.points.reserve(n);
    for (int i = 0; i < n; ++i) {
      const double x = rng.uniform();
      double mark = atomic->atoms.front().first;
      if (atomic->atoms.size() > 1) {
        double u = rng.uniform() * total;
        for (const auto& [t, m] : atomic->atoms) {
          if (u < m) {
            mark = t;
            break;
          }
          u -= m;
        }
      }
      config.points.push_back({x, mark});
    }
    return config;
  }
  if (!(eps > 0))
    throw std::domain_error("sample_levy: infinite-mass jump measure requires eps > 0");
  const double mass = gamma_tail_mass(eps);
  const int n = rng.poisson(mass);
  config.points.reserve(n);
  for (int i = 0; i < n; ++i)
    config.points.push_back({rng.uniform(), detail::sample_gamma_jump(eps, rng)});
  return config;
}

/// Independent Gamma(mass_j, 1) values, one per cell; the exact law of the
/// gamma process increments and the oracle for truncated jump sums.
inline std::vector<double> exact_gamma_increments(const PartitionOfBase& partition,
                                                  CounterRng& rng) {
  std::vector<double> out(partition.cell_count());
  for (int j = 0; j < partition.cell_count(); ++j) out[j] = rng.gamma(partition.mass(j));
  return out;
}

namespace detail {

/// Adaptive Simpson for complex integrands.
template <class F>
std::complex<double> adaptive_simpson(const F& f, double a, double b, std::complex<double> fa,
                                      std::complex<double> fm, std::complex<double> fb,
                                      std::complex<double> whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const std::complex<double> flm = f(lm), frm = f(rm);
  const std::complex<double> left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const std::complex<double> right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const std::complex<double> delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) < 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class F>
std::complex<double> integrate(const F& f, double a, double b, double tol = 1e-13) {
  const std::complex<double> fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const std::complex<double> whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

/// int t/(1+t^2) dPi, the compensator mean appearing in the increment
/// sampler. Gamma case integrates e^{-t}/(1+t^2) numerically above eps.
inline double compensator_mean(const LevyMeasure& measure, double eps = 0.0) {
  if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&measure)) {
    double s = 0;
    for (const auto& [t, m] : atomic->atoms) s += m * t / (1.0 + t * t);
    return s;
  }
  const double lo = std::max(eps, 0.0);
  const auto f = [](double t) {
    return std::complex<double>(std::exp(-t) / (1.0 + t * t), 0.0);
  };
  return detail::integrate(f, lo, 60.0).real();
}

/// log phi(y) = i c y - sigma^2 y^2 / 2 + int (e^{ity} - 1 - ity/(1+t^2)) dPi(t).
inline std::complex<double> levy_khintchine_exponent(const LevySpec& spec, double y) {
  const std::complex<double> i(0.0, 1.0);
  std::complex<double> result = i * spec.drift * y - 0.5 * spec.gaussian_variance * y * y;
  if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&spec.levy_measure)) {
    for (const auto& [t, m] : atomic->atoms)
      result += m * (std::exp(i * t * y) - 1.0 - i * t * y / (1.0 + t * t));
  } else {
    const auto f = [y, &i](double t) -> std::complex<double> {
      if (t == 0.0) return {0.0, 0.0};
      return (std::exp(i * t * y) - 1.0 - i * t * y / (1.0 + t * t)) * std::exp(-t) / t;
    };
    result += detail::integrate(f, 0.0, 60.0);
  }
  return result;
}

/// One increment of the process over a set of the given mass, following the
/// characteristic exponent above: drift + gaussian part + compensated jumps.
inline double sample_levy_increment(const LevySpec& spec, double mass, double eps,
                                    CounterRng& rng) {
  double value = spec.drift * mass;
  if (spec.gaussian_variance > 0) value += std::sqrt(spec.gaussian_variance * mass) * rng.normal();
  if (spec.has_jumps()) {
    LevySpec jumps_only = spec;
    jumps_only.drift = 0.0;
    jumps_only.gaussian_variance = 0.0;
    if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&spec.levy_measure)) {
      FiniteAtomicMeasure scaled = *atomic;
      for (auto& [t, m] : scaled.atoms) m *= mass;
      jumps_only.levy_measure = scaled;
      PointConfiguration jumps = sample_levy(jumps_only, eps, rng);
      for (const auto& p : jumps.points) value += p.mark;
      value -= mass * compensator_mean(spec.levy_measure);
    } else {
      const double jump_mass = mass * gamma_tail_mass(eps);
      const int n = rng.poisson(jump_mass);
      for (int k = 0; k < n; ++k) value += detail::sample_gamma_jump(eps, rng);
      value -= mass * compensator_mean(spec.levy_measure, eps);
    }
  }
  return value;
}

/// Pointwise transport of jump sizes; locations are untouched.
inline PointConfiguration transport_jump_sizes(const PointConfiguration& config,
                                               const std::function<double(double)>& map) {
  PointConfiguration out;
  out.points.reserve(config.points.size());
  for (const auto& p : config.points) {
    const double mapped = map(p.mark);
    if (!std::isfinite(mapped))
      throw std::domain_error("transport_jump_sizes: map undefined at a mark");
    out.points.push_back({p.location, mapped});
  }
  return out;
}

/// Monotone quantile coupling from the eps-truncated gamma measure onto a
/// finite atomic measure with the same total-mass normalization.
inline std::function<double(double)> quantile_transport_map(double eps,
                                                            FiniteAtomicMeasure target) {
  if (target.atoms.empty())
    throw std::invalid_argument("quantile_transport_map: empty target");
  std::sort(target.atoms.begin(), target.atoms.end());
  const double source_mass = gamma_tail_mass(eps);
  const double target_mass = target.total_mass();
  return [eps, source_mass, target_mass, target](double z) -> double {
    if (z < eps) return std::numeric_limits<double>::quiet_NaN();
    const double cdf = 1.0 - gamma_tail_mass(z) / source_mass;  // in [0,1]
    double acc = 0.0;
    for (const auto& [t, m] : target.atoms) {
      acc += m / target_mass;
      if (cdf <= acc) return t;
    }
    return target.atoms.back().first;
  };
}

}  // namespace levygauss
