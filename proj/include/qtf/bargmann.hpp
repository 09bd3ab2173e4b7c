#pragma once

// Slice hyperholomorphic Segal-Bargmann transform: the integral transform, its
// power-series (coefficient) form, slice derivative and creation operator on
// coefficients, the Schwartz-range decay functional, and the position / momentum
// operator correspondences.

#include <qtf/basis.hpp>
#include <qtf/quadrature.hpp>
#include <qtf/quaternion.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace qtf {

/// F(q) = sum_k q^k c_k with right quaternion coefficients.
struct CoefficientSequence {
  double nu{1.0};
  std::vector<Quaternion> coeffs;

  std::size_t size() const noexcept { return coeffs.size(); }

  /// Horner evaluation; the variable multiplies from the left.
  Quaternion evaluate(const Quaternion &q) const {
    Quaternion acc;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = q * acc + *it;
    return acc;
  }
};

inline CoefficientSequence operator+(const CoefficientSequence &a, const CoefficientSequence &b) {
  CoefficientSequence r{a.nu, a.coeffs};
  if (r.coeffs.size() < b.coeffs.size())
    r.coeffs.resize(b.coeffs.size());
  for (std::size_t k = 0; k < b.coeffs.size(); ++k)
    r.coeffs[k] += b.coeffs[k];
  return r;
}

inline CoefficientSequence operator*(CoefficientSequence a, double s) {
  for (auto &c : a.coeffs)
    c *= s;
  return a;
}

/// Integrand magnitude at the truncation edges when it exceeds the threshold.
struct TruncationRisk {
  double edge_integrand;
  double threshold;
};

inline constexpr double kTruncationThreshold = 1e-12;

/// B f(p) for p = a + b I given in slice form (b may be negative).
inline Quaternion bargmann_transform(const SampledSignal &f, double nu, const SliceComplex &p) {
  const auto &g = f.grid;
  return pairwise_sum<Quaternion>(f.size(), [&](std::size_t i) {
    return g.weights[i] * (bargmann_kernel(p, g.nodes[i], nu) * f.values[i]);
  });
}

/// B f(q) = int A(q, t) f(t) dt, kernel on the left of the signal.
inline Quaternion bargmann_transform(const SampledSignal &f, double nu, const Quaternion &q) {
  const auto &g = f.grid;
  const auto d = slice_decompose(q);
  if (!d.unit) {
    return pairwise_sum<Quaternion>(f.size(), [&](std::size_t i) {
      return g.weights[i] * bargmann_kernel(Quaternion{d.x}, g.nodes[i], nu).w * f.values[i];
    });
  }
  return bargmann_transform(f, nu, SliceComplex{d.x, d.y, *d.unit});
}

/// Reports when |A(q, t) f(t)| at either end of the grid is above the threshold, i.e.
/// the truncated integral may be missing mass.
inline std::optional<TruncationRisk> bargmann_edge_risk(const SampledSignal &f, double nu,
                                                        const Quaternion &q,
                                                        double threshold = kTruncationThreshold) {
  if (f.size() == 0)
    return std::nullopt;
  const auto &g = f.grid;
  const double lo = abs(bargmann_kernel(q, g.nodes.front(), nu)) * abs(f.values.front());
  const double hi = abs(bargmann_kernel(q, g.nodes.back(), nu)) * abs(f.values.back());
  const double edge = std::max(lo, hi);
  if (edge < threshold)
    return std::nullopt;
  return TruncationRisk{edge, threshold};
}

/// a_k = <f, psi_k^nu> for k = 0..kmax.
inline std::vector<Quaternion> hermite_coefficients(const SampledSignal &f, double nu,
                                                    std::size_t kmax) {
  const HermiteBasis basis(nu, kmax);
  const auto table = basis.table(f.grid);
  const std::size_t n = f.size();
  std::vector<Quaternion> a(kmax + 1);
  for (std::size_t k = 0; k <= kmax; ++k) {
    const double *row = table.data() + k * n;
    a[k] = pairwise_sum<Quaternion>(
        n, [&](std::size_t i) { return (f.grid.weights[i] * row[i]) * f.values[i]; });
  }
  return a;
}

/// Power-series coefficients of B f: c_k = <f, psi_k> sqrt(nu^{k+1} / (pi k!)).
inline CoefficientSequence bargmann_coefficients(const SampledSignal &f, double nu,
                                                 std::size_t kmax = kDefaultKmax) {
  auto a = hermite_coefficients(f, nu, kmax);
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] *= fock_coefficient(k, nu);
  return {nu, std::move(a)};
}

/// Inverse transform on coefficients: f_k^nu -> psi_k^nu, resampled on grid.
inline SampledSignal bargmann_inverse(const CoefficientSequence &c, const LineGrid &grid) {
  std::vector<Quaternion> a(c.size());
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] = c.coeffs[k] / fock_coefficient(k, c.nu);
  return hermite_combination(a, c.nu, grid);
}

/// Fock inner product from coefficients: sum_k conj(d_k) c_k ||q^k||^2.
inline Quaternion fock_inner(const CoefficientSequence &c, const CoefficientSequence &d) {
  const std::size_t n = std::min(c.size(), d.size());
  return pairwise_sum<Quaternion>(n, [&](std::size_t k) {
    const double s = fock_coefficient(k, c.nu);
    return (conj(d.coeffs[k]) * c.coeffs[k]) / (s * s);
  });
}

/// Slice derivative on power series: sum q^k c_k -> sum q^{k-1} k c_k.
inline CoefficientSequence slice_derivative(const CoefficientSequence &c) {
  CoefficientSequence d{c.nu, {}};
  for (std::size_t k = 1; k < c.size(); ++k)
    d.coeffs.push_back(static_cast<double>(k) * c.coeffs[k]);
  return d;
}

/// Creation operator M_q: (M_q c)_k = c_{k-1}.
inline CoefficientSequence multiply_by_q(const CoefficientSequence &c) {
  CoefficientSequence r{c.nu, {}};
  r.coeffs.reserve(c.size() + 1);
  r.coeffs.push_back(Quaternion{});
  r.coeffs.insert(r.coeffs.end(), c.coeffs.begin(), c.coeffs.end());
  return r;
}

struct SchwartzReport {
  std::vector<double> pvalues;
  /// scores[i] = sup_k |c_k| k^p sqrt(k!) for p = pvalues[i].
  std::vector<double> scores;
};

inline constexpr double kSchwartzNoiseFloor = 1e-12;

/// Decay functional sup_k |c_k| k^p sqrt(k!) of a Schwartz-range power series.
/// Terms whose |c_k| sqrt(k!) is below noise_floor times the largest such value are
/// treated as zero; quadrature roundoff would otherwise be amplified without bound.
inline SchwartzReport schwartz_decay_report(const CoefficientSequence &c,
                                            const std::vector<double> &pvalues,
                                            double noise_floor = kSchwartzNoiseFloor) {
  SchwartzReport r{pvalues, std::vector<double>(pvalues.size(), 0.0)};
  std::vector<double> log_mag(c.size());
  double max_log = -INFINITY;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double m = abs(c.coeffs[k]);
    log_mag[k] = m > 0.0 ? std::log(m) + 0.5 * std::lgamma(static_cast<double>(k) + 1.0)
                         : -INFINITY;
    max_log = std::max(max_log, log_mag[k]);
  }
  if (!std::isfinite(max_log))
    return r;
  const double cutoff = max_log + std::log(noise_floor);
  for (std::size_t ip = 0; ip < pvalues.size(); ++ip) {
    double best = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
      if (log_mag[k] < cutoff)
        continue;
      best = std::max(best, std::exp(log_mag[k] + pvalues[ip] * std::log(static_cast<double>(k))));
    }
    r.scores[ip] = best;
  }
  return r;
}

/// Central finite-difference derivative of order 4 or 6 on a uniform grid; samples
/// beyond the grid are taken as zero.
inline SampledSignal derivative(const SampledSignal &f, int order = 4) {
  if (!f.grid.uniform())
    throw BadGridSpec("finite differences need a uniform (trapezoid) grid");
  static constexpr double c4[] = {2.0 / 3.0, -1.0 / 12.0};
  static constexpr double c6[] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  const double *coef = nullptr;
  std::size_t reach = 0;
  if (order == 4) {
    coef = c4;
    reach = 2;
  } else if (order == 6) {
    coef = c6;
    reach = 3;
  } else {
    throw BadGridSpec("finite-difference order must be 4 or 6");
  }
  const double h = f.grid.spacing();
  const std::size_t n = f.size();
  SampledSignal d(f.grid);
  for (std::size_t i = 0; i < n; ++i) {
    Quaternion acc;
    for (std::size_t m = 1; m <= reach; ++m) {
      const Quaternion ahead = i + m < n ? f.values[i + m] : Quaternion{};
      const Quaternion behind = i >= m ? f.values[i - m] : Quaternion{};
      acc += coef[m - 1] * (ahead - behind);
    }
    d.values[i] = acc / h;
  }
  return d;
}

/// Position operator (X f)(t) = t f(t).
inline SampledSignal multiply_by_t(const SampledSignal &f) {
  SampledSignal r(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i)
    r.values[i] = f.grid.nodes[i] * f.values[i];
  return r;
}

/// 8 probe points on |q| <= 1.5 split over the slices of i and (i + j)/sqrt(2).
inline std::vector<Quaternion> default_operator_probes() {
  const ImaginaryUnit slices[] = {ImaginaryUnit::i(), ImaginaryUnit(1.0, 1.0, 0.0)};
  const double polar[][2] = {{0.4, 0.3}, {0.9, 1.9}, {1.2, -2.4}, {1.5, 4.0}};
  std::vector<Quaternion> probes;
  for (const auto &unit : slices)
    for (const auto &rp : polar)
      probes.push_back(
          SliceComplex{rp[0] * std::cos(rp[1]), rp[0] * std::sin(rp[1]), unit}.quaternion());
  return probes;
}

/// max_q |(d_S / nu + q) B f(q) - sqrt(2) B(t f)(q)|. The left side is assembled on
/// coefficients; the right side is a direct quadrature. For nu = 1 this is the
/// position-operator identity (d_S + q) B = sqrt(2) B X.
inline double position_equivalence_residual(const SampledSignal &f, double nu = 1.0,
                                            const std::vector<Quaternion> &probes =
                                                default_operator_probes(),
                                            std::size_t kmax = kDefaultKmax) {
  const auto c = bargmann_coefficients(f, nu, kmax);
  const auto lhs = slice_derivative(c) * (1.0 / nu) + multiply_by_q(c);
  const auto tf = multiply_by_t(f);
  double worst = 0.0;
  for (const auto &q : probes) {
    const auto rhs = kSqrt2 * bargmann_transform(tf, nu, q);
    worst = std::max(worst, abs(lhs.evaluate(q) - rhs));
  }
  return worst;
}

/// max_q |q B f(q) - B((X - D/nu) f / sqrt(2))(q)|, the creation operator against
/// position minus momentum. D is a central finite difference of the given order.
inline double momentum_equivalence_residual(const SampledSignal &f, double nu = 1.0,
                                            const std::vector<Quaternion> &probes =
                                                default_operator_probes(),
                                            std::size_t kmax = kDefaultKmax, int fd_order = 4) {
  const auto c = bargmann_coefficients(f, nu, kmax);
  const auto mq = multiply_by_q(c);
  const auto rhs_signal =
      (multiply_by_t(f) - derivative(f, fd_order) * (1.0 / nu)) * (1.0 / kSqrt2);
  double worst = 0.0;
  for (const auto &q : probes)
    worst = std::max(worst, abs(mq.evaluate(q) - bargmann_transform(rhs_signal, nu, q)));
  return worst;
}

} // namespace qtf
