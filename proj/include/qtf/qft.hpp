#pragma once

// Left-sided 1D quaternion Fourier transform F_I psi(w) = int e^{-2 pi I w t} psi(t) dt,
// its inverse, time-frequency shifts and convolution on sampled signals.
//
// All transforms run on the symplectic pair psi = psi_1 + psi_2 J: the slice
// exponential multiplies from the left, so it acts on both complex components alike.

#include <qtf/basis.hpp>
#include <qtf/error.hpp>
#include <qtf/quadrature.hpp>
#include <qtf/quaternion.hpp>

#include <cmath>
#include <complex>
#include <vector>

namespace qtf {

inline constexpr double kDefaultFrequencyHalfWidth = 8.0;
inline constexpr std::size_t kDefaultFrequencyNodes = 1024;

inline LineGrid default_frequency_grid() {
  return make_grid(-kDefaultFrequencyHalfWidth, kDefaultFrequencyHalfWidth,
                   kDefaultFrequencyNodes);
}

struct QftPlan {
  ImaginaryUnit unit{ImaginaryUnit::i()};
  LineGrid tgrid{default_time_grid()};
  LineGrid wgrid{default_frequency_grid()};
};

namespace detail {

// out(s) = sum_i w_i e^{sign 2 pi I s u_i} f(u_i) for every node s of `out`.
inline SampledSignal fourier_sum(const SampledSignal &f, const ImaginaryUnit &unit,
                                 const LineGrid &out, double sign) {
  const SymplecticFrame frame(unit);
  const std::size_t n = f.size();
  std::vector<SymplecticPair> src(n);
  for (std::size_t i = 0; i < n; ++i) {
    src[i] = frame.pair(f.values[i]);
    src[i].a *= f.grid.weights[i];
    src[i].b *= f.grid.weights[i];
  }
  SampledSignal r(out);
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double s = sign * 2.0 * kPi * out.nodes[m];
    const auto acc = pairwise_sum<SymplecticPair>(n, [&](std::size_t i) {
      const auto e = std::polar(1.0, s * f.grid.nodes[i]);
      return SymplecticPair{e * src[i].a, e * src[i].b};
    });
    r.values[m] = frame.join(acc);
  }
  return r;
}

} // namespace detail

/// F_I f on plan.wgrid by direct quadrature.
inline SampledSignal qft_forward(const SampledSignal &f, const QftPlan &plan) {
  require_same_grid(f.grid, plan.tgrid);
  return detail::fourier_sum(f, plan.unit, plan.wgrid, -1.0);
}

/// int e^{2 pi I w t} F(w) dw on plan.tgrid.
inline SampledSignal qft_inverse(const SampledSignal &F, const QftPlan &plan) {
  require_same_grid(F.grid, plan.wgrid);
  return detail::fourier_sum(F, plan.unit, plan.tgrid, 1.0);
}

enum class Interpolation { band_limited, cubic_spline };

namespace detail {

inline bool source_inside(const LineGrid &g, double s) {
  const double slack = 1e-9 * g.spacing();
  return s >= g.lo - slack && s <= g.hi + slack;
}

// Trigonometric interpolation of the periodic extension, evaluated at t_j - x.
// Both complex halves of the frame are handled as independent complex signals; the
// shift operator is real (Nyquist bin uses cos), so it commutes with that packing.
inline SampledSignal translate_band_limited(const SampledSignal &f, double x) {
  const std::size_t n = f.size();
  const double s = x / f.grid.spacing();
  std::vector<std::complex<double>> twiddle(n);
  for (std::size_t m = 0; m < n; ++m)
    twiddle[m] = std::polar(1.0, -2.0 * kPi * static_cast<double>(m) / static_cast<double>(n));

  std::vector<std::complex<double>> u(n), v(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto &q = f.values[j];
    u[j] = {q.w, q.x};
    v[j] = {q.y, q.z};
  }
  std::vector<std::complex<double>> U(n), W(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> a, b;
    for (std::size_t j = 0; j < n; ++j) {
      const auto &e = twiddle[(j * k) % n];
      a += u[j] * e;
      b += v[j] * e;
    }
    // Symmetric frequency index kk in [-n/2, n/2).
    const double kk = 2 * k < n ? static_cast<double>(k)
                                : static_cast<double>(k) - static_cast<double>(n);
    std::complex<double> shift;
    if (2 * k == n)
      shift = std::cos(kPi * s);
    else
      shift = std::polar(1.0, -2.0 * kPi * kk * s / static_cast<double>(n));
    U[k] = a * shift;
    W[k] = b * shift;
  }
  SampledSignal r(f.grid);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!source_inside(f.grid, f.grid.nodes[j] - x))
      continue;
    std::complex<double> a, b;
    for (std::size_t k = 0; k < n; ++k) {
      const auto e = std::conj(twiddle[(j * k) % n]);
      a += U[k] * e;
      b += W[k] * e;
    }
    a *= inv_n;
    b *= inv_n;
    r.values[j] = {a.real(), a.imag(), b.real(), b.imag()};
  }
  return r;
}

// Natural cubic spline through the samples, zero outside [lo, hi].
inline SampledSignal translate_spline(const SampledSignal &f, double x) {
  const std::size_t n = f.size();
  const double h = f.grid.spacing();
  // Second derivatives from the tridiagonal system M_{i-1} + 4 M_i + M_{i+1} = rhs_i.
  std::vector<Quaternion> M(n), rhs(n);
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    rhs[i] = (6.0 / (h * h)) * (f.values[i + 1] - 2.0 * f.values[i] + f.values[i - 1]);
  // Thomas algorithm on the interior unknowns.
  std::vector<Quaternion> d(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double denom = 4.0 - (i > 1 ? c[i - 1] : 0.0);
    c[i] = 1.0 / denom;
    d[i] = (rhs[i] - (i > 1 ? d[i - 1] : Quaternion{})) / denom;
  }
  for (std::size_t i = n - 1; i-- > 1;)
    M[i] = d[i] - c[i] * (i + 2 < n ? M[i + 1] : Quaternion{});

  SampledSignal r(f.grid);
  for (std::size_t j = 0; j < n; ++j) {
    const double src = f.grid.nodes[j] - x;
    if (!source_inside(f.grid, src))
      continue;
    const double pos = std::clamp((src - f.grid.lo) / h, 0.0, static_cast<double>(n - 1));
    const auto i = std::min(static_cast<std::size_t>(pos), n - 2);
    const double b = pos - static_cast<double>(i), a = 1.0 - b;
    r.values[j] = a * f.values[i] + b * f.values[i + 1] +
                  ((a * a * a - a) * M[i] + (b * b * b - b) * M[i + 1]) * (h * h / 6.0);
  }
  return r;
}

} // namespace detail

/// (tau_x f)(t) = f(t - x) resampled on the same grid; zero where t - x leaves it.
inline SampledSignal translate(const SampledSignal &f, double x,
                               Interpolation method = Interpolation::band_limited) {
  if (!f.grid.uniform())
    throw BadGridSpec("translate needs a uniform (trapezoid) grid");
  if (x == 0.0)
    return f;
  return method == Interpolation::band_limited ? detail::translate_band_limited(f, x)
                                               : detail::translate_spline(f, x);
}

/// (M_w f)(t) = e^{2 pi I w t} f(t), exponential on the left.
inline SampledSignal modulate(const SampledSignal &f, double omega, const ImaginaryUnit &unit) {
  SampledSignal r(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i)
    r.values[i] = slice_phase(2.0 * kPi * omega * f.grid.nodes[i], unit) * f.values[i];
  return r;
}

/// (f * g)(t) = int f(s) g(t - s) ds on the truncated grid.
///
/// t_i - t_j is in general not a node (symmetric grids with an even node count sit
/// half a step off), so g is pre-shifted by the fractional part and then indexed.
inline SampledSignal convolve(const SampledSignal &f, const SampledSignal &g) {
  require_same_grid(f.grid, g.grid);
  if (!f.grid.uniform())
    throw BadGridSpec("convolve needs a uniform (trapezoid) grid");
  const auto &grid = f.grid;
  const std::size_t n = f.size();
  const double h = grid.spacing();
  // t_i - t_j = lo + (i - j + offset) h with offset = -lo / h = k0 + frac.
  const double offset = -grid.lo / h;
  const double k0 = std::floor(offset + 1e-9);
  const double frac = std::max(0.0, offset - k0);
  const auto gs = frac == 0.0 ? g : translate(g, -frac * h);
  const auto base = static_cast<long long>(k0);

  SampledSignal r(grid);
  for (std::size_t i = 0; i < n; ++i) {
    r.values[i] = pairwise_sum<Quaternion>(n, [&](std::size_t j) {
      const long long idx = static_cast<long long>(i) - static_cast<long long>(j) + base;
      if (idx < 0 || idx >= static_cast<long long>(n))
        return Quaternion{};
      return grid.weights[j] * (f.values[j] * gs.values[static_cast<std::size_t>(idx)]);
    });
  }
  return r;
}

/// Rayleigh-quotient eigenvalue of F_I on the k-th Hermite function for nu = 2 pi.
struct EigenEstimate {
  std::size_t k;
  Quaternion lambda;
  /// ||F_I h_k - h_k lambda|| / ||h_k||.
  double residual;
};

inline EigenEstimate qft_eigenvalue(std::size_t k, const QftPlan &plan = {}) {
  const double nu = 2.0 * kPi;
  const HermiteBasis basis(nu, k);
  const auto spectrum = qft_forward(basis.sample_psi(k, plan.tgrid), plan);
  const auto on_w = basis.sample_psi(k, plan.wgrid);
  const double n2 = norm2_l2(on_w);
  const Quaternion lambda = inner_l2(spectrum, on_w) / n2;
  const double res = norm_l2(spectrum - on_w * lambda) / std::sqrt(n2);
  return {k, lambda, res};
}

} // namespace qtf
