#pragma once

// Discretization of L^2(R, H) and of the Fock-space inner product over one slice.
// Every integral in the library goes through a LineGrid (nodes + weights).

#include <qtf/error.hpp>
#include <qtf/quaternion.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace qtf {

enum class QuadratureRule { trapezoid, gauss_legendre };

/// Nodes and weights of a quadrature rule on the truncation interval [lo, hi].
struct LineGrid {
  double lo{0.0};
  double hi{0.0};
  QuadratureRule rule{QuadratureRule::trapezoid};
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return nodes.size(); }
  bool uniform() const noexcept { return rule == QuadratureRule::trapezoid; }
  /// Node spacing of a trapezoid grid.
  double spacing() const noexcept { return (hi - lo) / static_cast<double>(size() - 1); }

  bool operator==(const LineGrid &o) const {
    return lo == o.lo && hi == o.hi && rule == o.rule && size() == o.size();
  }
};

namespace detail {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], via Newton
// iteration on P_n from the Chebyshev-like initial guess.
inline void gauss_legendre_unit(std::size_t n, std::vector<double> &x,
                                std::vector<double> &w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const std::size_t m = (n + 1) / 2;
  const double nd = static_cast<double>(n);
  for (std::size_t i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        const double jd = static_cast<double>(j);
        p1 = ((2.0 * jd - 1.0) * z * p2 - (jd - 1.0) * p3) / jd;
      }
      pp = nd * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-16)
        break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

} // namespace detail

/// Builds the named rule on [lo, hi] with n nodes.
inline LineGrid make_grid(double lo, double hi, std::size_t n,
                          QuadratureRule rule = QuadratureRule::trapezoid) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw BadGridSpec("grid bounds must be finite with lo < hi");
  if (n < 2)
    throw BadGridSpec("grid needs at least 2 nodes");

  LineGrid g;
  g.lo = lo;
  g.hi = hi;
  g.rule = rule;
  g.nodes.resize(n);
  g.weights.resize(n);
  if (rule == QuadratureRule::trapezoid) {
    const double h = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      g.nodes[i] = lo + h * static_cast<double>(i);
      g.weights[i] = h;
    }
    g.nodes.back() = hi;
    g.weights.front() = g.weights.back() = 0.5 * h;
  } else {
    std::vector<double> x, w;
    detail::gauss_legendre_unit(n, x, w);
    const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < n; ++i) {
      g.nodes[i] = mid + half * x[i];
      g.weights[i] = half * w[i];
    }
  }
  return g;
}

inline constexpr std::size_t kDefaultTimeNodes = 1024;
inline constexpr double kDefaultTimeHalfWidth = 8.0;
inline constexpr std::size_t kDefaultPlaneNodes = 256;
inline constexpr double kDefaultPlaneHalfWidth = 6.0;

/// Time-domain grid for functions decaying like e^{-nu t^2 / 2}. For nu = 2 pi this is
/// [-8, 8] with 1024 nodes; smaller nu widens the interval (so nu L^2 >= 128 pi) and
/// adds nodes so the spacing never exceeds that of the nu = 2 pi grid.
inline LineGrid default_time_grid(double nu = 2.0 * std::numbers::pi) {
  const double half = std::max(kDefaultTimeHalfWidth, std::sqrt(128.0 * std::numbers::pi / nu));
  const auto n = static_cast<std::size_t>(
      std::ceil(static_cast<double>(kDefaultTimeNodes - 1) * half / kDefaultTimeHalfWidth)) + 1;
  return make_grid(-half, half, n);
}

/// One axis of the Fock-plane grid: [-6, 6] with 256 nodes, widened to [-8/sqrt(nu),
/// 8/sqrt(nu)] when the Gaussian weight e^{-nu |q|^2} is too wide for [-6, 6].
inline LineGrid default_plane_axis(double nu = 2.0 * std::numbers::pi) {
  const double half = std::max(kDefaultPlaneHalfWidth, 8.0 / std::sqrt(nu));
  return make_grid(-half, half, kDefaultPlaneNodes);
}

/// Deterministic pairwise (cascade) summation of term(0) + ... + term(n-1).
template <class T, class Term> T pairwise_sum(std::size_t begin, std::size_t end, Term &&term) {
  constexpr std::size_t kBlock = 32;
  if (end - begin <= kBlock) {
    T acc{};
    for (std::size_t i = begin; i < end; ++i)
      acc += term(i);
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  T left = pairwise_sum<T>(begin, mid, term);
  left += pairwise_sum<T>(mid, end, term);
  return left;
}

template <class T, class Term> T pairwise_sum(std::size_t n, Term &&term) {
  return pairwise_sum<T>(std::size_t{0}, n, term);
}

/// Quadrature of a real or quaternion valued function over the grid.
template <class T = double, class F> T integrate(const LineGrid &grid, F &&fn) {
  return pairwise_sum<T>(grid.size(),
                         [&](std::size_t i) -> T { return grid.weights[i] * fn(grid.nodes[i]); });
}

/// A quaternion valued function sampled at the nodes of a grid.
struct SampledSignal {
  LineGrid grid;
  std::vector<Quaternion> values;

  SampledSignal() = default;
  explicit SampledSignal(LineGrid g) : grid(std::move(g)), values(grid.size()) {}
  SampledSignal(LineGrid g, std::vector<Quaternion> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid.size())
      throw GridMismatch("signal has " + std::to_string(values.size()) + " values for " +
                         std::to_string(grid.size()) + " nodes");
  }

  std::size_t size() const noexcept { return values.size(); }
  const Quaternion &operator[](std::size_t i) const { return values[i]; }
  Quaternion &operator[](std::size_t i) { return values[i]; }
};

template <class F> SampledSignal sample(const LineGrid &grid, F &&fn) {
  SampledSignal s(grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    s.values[i] = Quaternion(fn(grid.nodes[i]));
  return s;
}

inline void require_same_grid(const LineGrid &a, const LineGrid &b) {
  if (!(a == b))
    throw GridMismatch("signals live on different grids");
}

// Pointwise algebra; both operands on the same grid.
inline SampledSignal operator+(SampledSignal a, const SampledSignal &b) {
  require_same_grid(a.grid, b.grid);
  for (std::size_t i = 0; i < a.size(); ++i)
    a.values[i] += b.values[i];
  return a;
}

inline SampledSignal operator-(SampledSignal a, const SampledSignal &b) {
  require_same_grid(a.grid, b.grid);
  for (std::size_t i = 0; i < a.size(); ++i)
    a.values[i] -= b.values[i];
  return a;
}

inline SampledSignal operator*(SampledSignal a, double s) {
  for (auto &v : a.values)
    v *= s;
  return a;
}

/// Right multiplication by a quaternion scalar: (f lambda)(t) = f(t) lambda.
inline SampledSignal operator*(SampledSignal a, const Quaternion &lambda) {
  for (auto &v : a.values)
    v = v * lambda;
  return a;
}

/// <f, g> = sum_i w_i conj(g(t_i)) f(t_i): right H-linear in f, conjugate in g.
inline Quaternion inner_l2(const SampledSignal &f, const SampledSignal &g) {
  require_same_grid(f.grid, g.grid);
  const auto &w = f.grid.weights;
  return pairwise_sum<Quaternion>(
      f.size(), [&](std::size_t i) { return w[i] * (conj(g.values[i]) * f.values[i]); });
}

inline double norm2_l2(const SampledSignal &f) {
  const auto &w = f.grid.weights;
  return pairwise_sum<double>(f.size(), [&](std::size_t i) { return w[i] * norm2(f.values[i]); });
}

inline double norm_l2(const SampledSignal &f) { return std::sqrt(norm2_l2(f)); }

inline double max_abs_diff(const SampledSignal &a, const SampledSignal &b) {
  require_same_grid(a.grid, b.grid);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, abs(a.values[i] - b.values[i]));
  return m;
}

/// Cartesian product grid over a slice C_I (x + y I) or over the (x, omega) plane.
struct PlaneGrid {
  LineGrid xgrid;
  LineGrid ygrid;

  std::size_t size() const noexcept { return xgrid.size() * ygrid.size(); }
  bool operator==(const PlaneGrid &) const = default;
};

inline PlaneGrid default_plane_grid(double nu = 2.0 * std::numbers::pi) {
  auto axis = default_plane_axis(nu);
  return {axis, axis};
}

/// Values of a slice function at q = x + y I on a plane grid, row-major in x.
struct PlaneSamples {
  PlaneGrid grid;
  ImaginaryUnit unit{ImaginaryUnit::i()};
  std::vector<Quaternion> values;

  const Quaternion &at(std::size_t ix, std::size_t iy) const {
    return values[ix * grid.ygrid.size() + iy];
  }
};

template <class F>
PlaneSamples sample_plane(const PlaneGrid &grid, const ImaginaryUnit &unit, F &&fn) {
  PlaneSamples s{grid, unit, {}};
  s.values.reserve(grid.size());
  for (double x : grid.xgrid.nodes)
    for (double y : grid.ygrid.nodes)
      s.values.push_back(fn(SliceComplex{x, y, unit}.quaternion()));
  return s;
}

/// <F, G> = int_{C_I} conj(G(q)) F(q) e^{-nu |q|^2} dlambda_I(q), by the product rule.
inline Quaternion inner_fock(const PlaneSamples &F, const PlaneSamples &G, double nu) {
  if (!(F.grid == G.grid) || !(F.unit == G.unit) || F.values.size() != G.values.size())
    throw GridMismatch("Fock samples must share the plane grid and the slice");
  const auto &xs = F.grid.xgrid;
  const auto &ys = F.grid.ygrid;
  const std::size_t ny = ys.size();
  return pairwise_sum<Quaternion>(xs.size(), [&](std::size_t ix) {
    const double x = xs.nodes[ix];
    Quaternion row;
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double y = ys.nodes[iy];
      const double weight = xs.weights[ix] * ys.weights[iy] * std::exp(-nu * (x * x + y * y));
      const std::size_t idx = ix * ny + iy;
      row += weight * (conj(G.values[idx]) * F.values[idx]);
    }
    return row;
  });
}

} // namespace qtf
