#pragma once

// Quaternion short-time Fourier transform with the Gaussian window
// phi(t) = 2^{1/4} e^{-pi t^2}:
//
//   V f(x, w) = sqrt(2) int e^{-2 pi I w t} f(t) phi(t - x) dt
//             = e^{-I pi x w} B f(conj(q) / sqrt(2)) e^{-pi |q|^2 / 2},  q = x + I w, nu = 2 pi
//
// plus reconstruction, the adjoint, the Gabor reproducing kernel and the
// uncertainty functionals evaluated on a rectangular (x, w) lattice.

#include <qtf/bargmann.hpp>
#include <qtf/basis.hpp>
#include <qtf/error.hpp>
#include <qtf/qft.hpp>
#include <qtf/quadrature.hpp>
#include <qtf/quaternion.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace qtf {

inline constexpr double kWindowNu = 2.0 * kPi;

/// phi(t) = 2^{1/4} e^{-pi t^2}, unit L^2 norm.
inline double gaussian_window(double t) { return std::pow(2.0, 0.25) * std::exp(-kPi * t * t); }

inline SampledSignal sample_window(const LineGrid &grid) { return sample(grid, gaussian_window); }

// phi(t - x) is below 1e-66 for |t - x| > 7; those nodes are skipped.
inline constexpr double kWindowReach = 7.0;

enum class StftRoute { windowed, bargmann };

/// Lattice and slice of a QSTFT evaluation.
struct TimeFreqPlan {
  LineGrid xgrid{make_grid(-4.0, 4.0, 129)};
  LineGrid wgrid{make_grid(-4.0, 4.0, 129)};
  ImaginaryUnit unit{ImaginaryUnit::i()};
  StftRoute route{StftRoute::windowed};
};

/// V f sampled on the lattice, row-major in x.
struct TimeFreqGrid {
  LineGrid xgrid;
  LineGrid wgrid;
  ImaginaryUnit unit{ImaginaryUnit::i()};
  std::vector<Quaternion> values;

  std::size_t nx() const noexcept { return xgrid.size(); }
  std::size_t nw() const noexcept { return wgrid.size(); }
  Quaternion &at(std::size_t ix, std::size_t iw) { return values[ix * nw() + iw]; }
  const Quaternion &at(std::size_t ix, std::size_t iw) const { return values[ix * nw() + iw]; }
  double cell_weight(std::size_t ix, std::size_t iw) const {
    return xgrid.weights[ix] * wgrid.weights[iw];
  }
};

inline TimeFreqGrid make_time_freq_grid(const TimeFreqPlan &plan) {
  return {plan.xgrid, plan.wgrid, plan.unit,
          std::vector<Quaternion>(plan.xgrid.size() * plan.wgrid.size())};
}

namespace detail {

inline std::pair<std::size_t, std::size_t> window_range(const LineGrid &g, double x) {
  const auto lo = std::lower_bound(g.nodes.begin(), g.nodes.end(), x - kWindowReach);
  const auto hi = std::upper_bound(g.nodes.begin(), g.nodes.end(), x + kWindowReach);
  return {static_cast<std::size_t>(lo - g.nodes.begin()),
          static_cast<std::size_t>(hi - g.nodes.begin())};
}

} // namespace detail

/// sqrt(2) int e^{-2 pi I w t} f(t) phi(t - x) dt by quadrature on f's grid.
inline Quaternion qstft_windowed(const SampledSignal &f, double x, double omega,
                                 const ImaginaryUnit &unit) {
  const auto &g = f.grid;
  const auto [b, e] = detail::window_range(g, x);
  const auto acc = pairwise_sum<Quaternion>(b, e, [&](std::size_t i) {
    const double t = g.nodes[i];
    return (g.weights[i] * gaussian_window(t - x)) *
           (slice_phase(-2.0 * kPi * omega * t, unit) * f.values[i]);
  });
  return kSqrt2 * acc;
}

/// e^{-I pi x w} B f(conj(q) / sqrt(2)) e^{-pi |q|^2 / 2} with nu = 2 pi.
inline Quaternion qstft_bargmann(const SampledSignal &f, double x, double omega,
                                 const ImaginaryUnit &unit) {
  const SliceComplex p{x / kSqrt2, -omega / kSqrt2, unit};
  const Quaternion b = bargmann_transform(f, kWindowNu, p);
  const double gauss = std::exp(-0.5 * kPi * (x * x + omega * omega));
  return (slice_phase(-kPi * x * omega, unit) * b) * gauss;
}

/// Batch evaluation over the plan's lattice.
inline TimeFreqGrid qstft_grid(const SampledSignal &f, const TimeFreqPlan &plan = {}) {
  auto V = make_time_freq_grid(plan);
  const std::size_t nx = plan.xgrid.size(), nw = plan.wgrid.size();
  if (plan.route == StftRoute::bargmann) {
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iw = 0; iw < nw; ++iw)
        V.at(ix, iw) = qstft_bargmann(f, plan.xgrid.nodes[ix], plan.wgrid.nodes[iw], plan.unit);
    return V;
  }

  // Windowed route on symplectic pairs: per w a phase row, per x a window row, then a
  // real-by-complex dot product.
  const SymplecticFrame frame(plan.unit);
  const auto &g = f.grid;
  const std::size_t n = f.size();
  std::vector<SymplecticPair> src(n);
  for (std::size_t i = 0; i < n; ++i)
    src[i] = frame.pair(f.values[i]);
  std::vector<std::complex<double>> phase(nw * n);
  for (std::size_t iw = 0; iw < nw; ++iw)
    for (std::size_t i = 0; i < n; ++i)
      phase[iw * n + i] = std::polar(1.0, -2.0 * kPi * plan.wgrid.nodes[iw] * g.nodes[i]);
  std::vector<double> win(n);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const double x = plan.xgrid.nodes[ix];
    const auto [b, e] = detail::window_range(g, x);
    for (std::size_t i = b; i < e; ++i)
      win[i] = g.weights[i] * gaussian_window(g.nodes[i] - x);
    for (std::size_t iw = 0; iw < nw; ++iw) {
      const auto *ph = phase.data() + iw * n;
      const auto acc = pairwise_sum<SymplecticPair>(b, e, [&](std::size_t i) {
        const auto c = win[i] * ph[i];
        return SymplecticPair{c * src[i].a, c * src[i].b};
      });
      V.at(ix, iw) = kSqrt2 * frame.join(acc);
    }
  }
  return V;
}

inline void require_same_lattice(const TimeFreqGrid &a, const TimeFreqGrid &b) {
  if (!(a.xgrid == b.xgrid) || !(a.wgrid == b.wgrid) || !(a.unit == b.unit) ||
      a.values.size() != b.values.size())
    throw GridMismatch("time-frequency grids differ");
}

/// <F, G> = sum w_x w_w conj(G) F over the lattice.
inline Quaternion inner_tf(const TimeFreqGrid &F, const TimeFreqGrid &G) {
  require_same_lattice(F, G);
  const std::size_t nw = F.nw();
  return pairwise_sum<Quaternion>(F.values.size(), [&](std::size_t idx) {
    return F.cell_weight(idx / nw, idx % nw) * (conj(G.values[idx]) * F.values[idx]);
  });
}

inline double norm2_tf(const TimeFreqGrid &F) {
  const std::size_t nw = F.nw();
  return pairwise_sum<double>(F.values.size(), [&](std::size_t idx) {
    return F.cell_weight(idx / nw, idx % nw) * norm2(F.values[idx]);
  });
}

namespace detail {

// c int int e^{2 pi I w y} F(x, w) e^{-pi (y - x)^2} dx dw at every node y.
inline SampledSignal gaussian_synthesis(const TimeFreqGrid &F, const LineGrid &out, double c) {
  const SymplecticFrame frame(F.unit);
  const std::size_t nx = F.nx(), nw = F.nw();
  std::vector<SymplecticPair> src(F.values.size());
  for (std::size_t idx = 0; idx < src.size(); ++idx)
    src[idx] = frame.pair(F.values[idx]);

  SampledSignal r(out);
  std::vector<double> gx(nx);
  std::vector<SymplecticPair> col(nw);
  for (std::size_t m = 0; m < out.size(); ++m) {
    const double y = out.nodes[m];
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double d = y - F.xgrid.nodes[ix];
      gx[ix] = F.xgrid.weights[ix] * std::exp(-kPi * d * d);
    }
    // Gaussian in x first (real), then the slice exponential in w on the left.
    for (std::size_t iw = 0; iw < nw; ++iw)
      col[iw] = pairwise_sum<SymplecticPair>(nx, [&](std::size_t ix) {
        const auto &s = src[ix * nw + iw];
        return SymplecticPair{gx[ix] * s.a, gx[ix] * s.b};
      });
    const auto acc = pairwise_sum<SymplecticPair>(nw, [&](std::size_t iw) {
      const auto e = F.wgrid.weights[iw] * std::polar(1.0, 2.0 * kPi * F.wgrid.nodes[iw] * y);
      return SymplecticPair{e * col[iw].a, e * col[iw].b};
    });
    r.values[m] = c * frame.join(acc);
  }
  return r;
}

} // namespace detail

/// f(y) = 2^{-1/4} int int e^{2 pi I w y} V(x, w) e^{-pi (y - x)^2} dx dw.
inline SampledSignal qstft_reconstruct(const TimeFreqGrid &V,
                                       const LineGrid &out = default_time_grid()) {
  return detail::gaussian_synthesis(V, out, std::pow(2.0, -0.25));
}

/// Adjoint of V on the lattice: 2^{3/4} times the same integral (so A V = 2 Id).
inline SampledSignal qstft_adjoint(const TimeFreqGrid &F,
                                   const LineGrid &out = default_time_grid()) {
  return detail::gaussian_synthesis(F, out, std::pow(2.0, 0.75));
}

/// K(w, x; w', x') = int e^{-2 pi I w' t} phi(t - x') conj(e^{-2 pi I w t} phi(t - x)) dt.
inline Quaternion gabor_kernel(double x, double omega, double xp, double omegap,
                               const ImaginaryUnit &unit,
                               const LineGrid &grid = default_time_grid()) {
  return pairwise_sum<Quaternion>(grid.size(), [&](std::size_t i) {
    const double t = grid.nodes[i];
    const Quaternion left = slice_phase(-2.0 * kPi * omegap * t, unit).quaternion() *
                            gaussian_window(t - xp);
    const Quaternion right = slice_phase(-2.0 * kPi * omega * t, unit).quaternion() *
                             gaussian_window(t - x);
    return grid.weights[i] * (left * conj(right));
  });
}

/// K(w, x; w', x') for a fixed (x', w') against every lattice cell (x, w).
inline TimeFreqGrid gabor_kernel_row(double xp, double omegap, const TimeFreqPlan &plan,
                                     const LineGrid &grid = default_time_grid()) {
  auto K = make_time_freq_grid(plan);
  const SymplecticFrame frame(plan.unit);
  const std::size_t n = grid.size();
  std::vector<double> base(n);
  for (std::size_t i = 0; i < n; ++i)
    base[i] = grid.weights[i] * gaussian_window(grid.nodes[i] - xp);
  const auto [b0, e0] = detail::window_range(grid, xp);
  for (std::size_t ix = 0; ix < K.nx(); ++ix) {
    const double x = plan.xgrid.nodes[ix];
    const auto [b1, e1] = detail::window_range(grid, x);
    const std::size_t b = std::max(b0, b1), e = std::min(e0, e1);
    for (std::size_t iw = 0; iw < K.nw(); ++iw) {
      const double dw = plan.wgrid.nodes[iw] - omegap;
      std::complex<double> acc;
      if (b < e)
        acc = pairwise_sum<std::complex<double>>(b, e, [&](std::size_t i) {
          const double t = grid.nodes[i];
          return (base[i] * gaussian_window(t - x)) * std::polar(1.0, 2.0 * kPi * dw * t);
        });
      K.at(ix, iw) = frame.embed(acc);
    }
  }
  return K;
}

/// int int K(w, x; w', x') V(x, w) dx dw for the probe (x', w').
inline Quaternion reproduce(const TimeFreqGrid &V, double xp, double omegap,
                            const LineGrid &grid = default_time_grid()) {
  const TimeFreqPlan plan{V.xgrid, V.wgrid, V.unit, StftRoute::windowed};
  const auto K = gabor_kernel_row(xp, omegap, plan, grid);
  const std::size_t nw = V.nw();
  return pairwise_sum<Quaternion>(V.values.size(), [&](std::size_t idx) {
    return V.cell_weight(idx / nw, idx % nw) * (K.values[idx] * V.values[idx]);
  });
}

struct LiebResult {
  double p;
  double lhs;
  double bound;
  bool holds;
};

inline constexpr double kLiebSlack = 1e-6;

/// int |V f|^p over the lattice against (2^{p+1} / p) ||f||^p.
inline LiebResult lieb_functional(const TimeFreqGrid &V, double f_norm, double p) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw BadExponent("Lieb exponent must satisfy p >= 2");
  const std::size_t nw = V.nw();
  const double lhs = pairwise_sum<double>(V.values.size(), [&](std::size_t idx) {
    return V.cell_weight(idx / nw, idx % nw) * std::pow(abs(V.values[idx]), p);
  });
  const double bound = std::pow(2.0, p + 1.0) / p * std::pow(f_norm, p);
  return {p, lhs, bound, lhs <= bound + kLiebSlack};
}

inline LiebResult lieb_functional(const SampledSignal &f, double p,
                                  const TimeFreqPlan &plan = {}) {
  if (!(p >= 2.0) || !std::isfinite(p))
    throw BadExponent("Lieb exponent must satisfy p >= 2");
  return lieb_functional(qstft_grid(f, plan), norm_l2(f), p);
}

/// c_p = (2^{p+1} / p)^{-2 / (p - 2)}.
inline double sharp_constant(double p) {
  if (!(p > 2.0) || !std::isfinite(p))
    throw BadExponent("sharpened uncertainty needs p > 2");
  return std::pow(std::pow(2.0, p + 1.0) / p, -2.0 / (p - 2.0));
}

inline double weak_uncertainty_bound(double eps) { return eps >= 1.0 ? 0.0 : 0.5 * (1.0 - eps); }

inline double sharp_uncertainty_bound(double eps, double p) {
  const double c = sharp_constant(p);
  return eps >= 1.0 ? 0.0 : c * std::pow(1.0 - eps, p / (p - 2.0));
}

struct ConcentrationReport {
  double scale;   // factor applied to f to make it a unit vector
  double energy;  // int_U |V f|^2 after normalization
  double epsilon;
  double measure; // sum of the cell weights in U
  double weak_bound;
  double sharp_bound;
  double p;
  bool hypothesis; // energy >= 1 - eps
  bool weak_ok;
  bool sharp_ok;
};

/// Mask over lattice cells, row-major in x like TimeFreqGrid::values.
using CellMask = std::vector<bool>;

inline CellMask rectangle_mask(const TimeFreqPlan &plan, double x0, double x1, double w0,
                               double w1) {
  CellMask m;
  m.reserve(plan.xgrid.size() * plan.wgrid.size());
  for (double x : plan.xgrid.nodes)
    for (double w : plan.wgrid.nodes)
      m.push_back(x >= x0 && x <= x1 && w >= w0 && w <= w1);
  return m;
}

/// Weak and sharpened uncertainty bounds for the region U. The signal is scaled to
/// unit norm first; when the energy hypothesis fails the bounds are vacuous and the
/// _ok flags report true.
inline ConcentrationReport concentration_check(const SampledSignal &f, const CellMask &U,
                                               double eps, double p = 4.0,
                                               const TimeFreqPlan &plan = {}) {
  const double sharp = sharp_uncertainty_bound(eps, p);
  if (U.size() != plan.xgrid.size() * plan.wgrid.size())
    throw GridMismatch("cell mask does not match the lattice");
  const double nrm = norm_l2(f);
  const double scale = nrm > 0.0 ? 1.0 / nrm : 0.0;
  const auto V = qstft_grid(f * scale, plan);
  const std::size_t nw = V.nw();
  double energy = 0.0, measure = 0.0;
  for (std::size_t idx = 0; idx < U.size(); ++idx) {
    if (!U[idx])
      continue;
    const double w = V.cell_weight(idx / nw, idx % nw);
    energy += w * norm2(V.values[idx]);
    measure += w;
  }
  ConcentrationReport r{scale, energy, eps, measure, weak_uncertainty_bound(eps), sharp, p,
                        energy >= 1.0 - eps, true, true};
  if (r.hypothesis) {
    r.weak_ok = measure >= r.weak_bound;
    r.sharp_ok = measure >= r.sharp_bound;
  }
  return r;
}

/// Probe points (x, w) for pointwise identities.
struct TfPoint {
  double x, omega;
};

inline std::vector<TfPoint> default_tf_probes() {
  return {{0.0, 0.0},  {0.5, -0.3}, {-0.8, 0.6},  {1.1, 1.2},  {-1.3, -0.9},
          {0.2, 1.7},  {1.6, -0.4}, {-0.4, -1.5}, {0.9, 0.1}};
}

/// Time-frequency intertwining V f(x, w) = C e^{-2 pi I w x} V(F_I f)(w, -x), measured
/// for the candidate constants C = 1 and C = sqrt(2).
struct IntertwineReport {
  double residual_one;
  double residual_sqrt2;
  double fitted_constant; // least-squares real C, 0 when both sides vanish
  double empirical_constant;
};

inline IntertwineReport fourier_intertwine_residual(const SampledSignal &f,
                                                    const ImaginaryUnit &unit =
                                                        ImaginaryUnit::i(),
                                                    const std::vector<TfPoint> &probes =
                                                        default_tf_probes()) {
  const QftPlan qplan{unit, f.grid, default_frequency_grid()};
  const auto spectrum = qft_forward(f, qplan);
  double r1 = 0.0, r2 = 0.0, num = 0.0, den = 0.0;
  for (const auto &pt : probes) {
    const Quaternion lhs = qstft_windowed(f, pt.x, pt.omega, unit);
    const Quaternion rhs = slice_phase(-2.0 * kPi * pt.omega * pt.x, unit) *
                           qstft_windowed(spectrum, pt.omega, -pt.x, unit);
    r1 = std::max(r1, abs(lhs - rhs));
    r2 = std::max(r2, abs(lhs - kSqrt2 * rhs));
    num += dot4(lhs, rhs);
    den += norm2(rhs);
  }
  const double fitted = den > 0.0 ? num / den : 0.0;
  return {r1, r2, fitted, r2 < r1 ? kSqrt2 : 1.0};
}

/// Closed form of V(h_k / ||h_k||^2)(x, w) = e^{-I pi x w} e^{-pi |q|^2 / 2}
/// (2^{3/4} / (2^k k!)) conj(q)^k for nu = 2 pi.
inline Quaternion hermite_image(std::size_t k, double x, double omega,
                                const ImaginaryUnit &unit) {
  const double log_pref = 0.75 * std::log(2.0) - static_cast<double>(k) * std::log(2.0) -
                          std::lgamma(static_cast<double>(k) + 1.0);
  std::complex<double> qb(x, -omega), pw(1.0, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    pw *= qb;
  const auto val = std::polar(1.0, -kPi * x * omega) * pw *
                   std::exp(log_pref - 0.5 * kPi * (x * x + omega * omega));
  return SliceComplex{val.real(), val.imag(), unit}.quaternion();
}

struct HermiteImageReport {
  std::size_t k;
  double residual;      // max |numeric - closed form| / max |closed form| over probes
  double fitted_ratio;  // least-squares real ratio numeric / closed form
};

inline HermiteImageReport hermite_image_residual(std::size_t k,
                                                 const ImaginaryUnit &unit = ImaginaryUnit::i(),
                                                 const std::vector<TfPoint> &probes =
                                                     default_tf_probes(),
                                                 const LineGrid &grid = default_time_grid()) {
  const HermiteBasis basis(kWindowNu, k);
  const auto f = basis.sample_psi(k, grid) * (1.0 / basis.norms[k]);
  double res = 0.0, scale = 0.0, num = 0.0, den = 0.0;
  for (const auto &pt : probes) {
    const auto v = qstft_windowed(f, pt.x, pt.omega, unit);
    const auto c = hermite_image(k, pt.x, pt.omega, unit);
    res = std::max(res, abs(v - c));
    scale = std::max(scale, abs(c));
    num += dot4(v, c);
    den += norm2(c);
  }
  return {k, scale > 0.0 ? res / scale : res, den > 0.0 ? num / den : 0.0};
}

} // namespace qtf
