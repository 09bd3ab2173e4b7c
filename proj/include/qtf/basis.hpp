#pragma once

// Weighted Hermite functions, normalized Fock monomials and the Segal-Bargmann
// kernel that links them.

#include <qtf/quadrature.hpp>
#include <qtf/quaternion.hpp>

#include <cmath>
#include <numbers>
#include <vector>

namespace qtf {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr std::size_t kDefaultKmax = 40;

/// psi_0 .. psi_kmax at one point t, filled into out[0..kmax].
///
/// Uses the normalized three-term recurrence
///   psi_{k+1}(t) = (sqrt(2 nu) t psi_k(t) - sqrt(k) psi_{k-1}(t)) / sqrt(k+1),
/// psi_0(t) = (nu/pi)^{1/4} e^{-nu t^2 / 2}, obtained from the physicists' Hermite
/// recurrence under the substitution u = sqrt(nu) t. Rodrigues' formula loses all
/// precision well before k = 20, the recurrence does not.
inline void hermite_psi_all(std::size_t kmax, double nu, double t, std::vector<double> &out) {
  out.resize(kmax + 1);
  out[0] = std::pow(nu / kPi, 0.25) * std::exp(-0.5 * nu * t * t);
  if (kmax == 0)
    return;
  const double a = std::sqrt(2.0 * nu) * t;
  out[1] = a * out[0];
  for (std::size_t k = 1; k < kmax; ++k) {
    const double kd = static_cast<double>(k);
    out[k + 1] = (a * out[k] - std::sqrt(kd) * out[k - 1]) / std::sqrt(kd + 1.0);
  }
}

/// Normalized weighted Hermite function psi_k^nu(t) = h_k^nu(t) / ||h_k^nu||.
inline double hermite_psi(std::size_t k, double nu, double t) {
  std::vector<double> buf;
  hermite_psi_all(k, nu, t, buf);
  return buf[k];
}

/// ||h_k^nu||^2 = 2^k nu^k k! sqrt(pi / nu), in log form to survive large k.
inline double log_hermite_norm2(std::size_t k, double nu) {
  const double kd = static_cast<double>(k);
  return kd * std::log(2.0 * nu) + std::lgamma(kd + 1.0) + 0.5 * std::log(kPi / nu);
}

inline double hermite_norm(std::size_t k, double nu) {
  return std::exp(0.5 * log_hermite_norm2(k, nu));
}

/// Unnormalized h_k^nu(t) = (-1)^k e^{nu t^2/2} d^k/dt^k e^{-nu t^2}.
inline double hermite_h(std::size_t k, double nu, double t) {
  return hermite_norm(k, nu) * hermite_psi(k, nu, t);
}

/// The orthonormal family psi_0 .. psi_kmax for one nu, with the norms of the
/// unnormalized h_k.
struct HermiteBasis {
  double nu;
  std::size_t kmax;
  std::vector<double> norms;

  HermiteBasis(double nu_, std::size_t kmax_ = kDefaultKmax) : nu(nu_), kmax(kmax_) {
    norms.reserve(kmax + 1);
    for (std::size_t k = 0; k <= kmax; ++k)
      norms.push_back(hermite_norm(k, nu));
  }

  double psi(std::size_t k, double t) const { return hermite_psi(k, nu, t); }

  SampledSignal sample_psi(std::size_t k, const LineGrid &grid) const {
    return sample(grid, [&](double t) { return psi(k, t); });
  }

  SampledSignal sample_h(std::size_t k, const LineGrid &grid) const {
    return sample(grid, [&](double t) { return norms[k] * psi(k, t); });
  }

  /// Row-major (kmax+1) x n table of psi_k(t_i).
  std::vector<double> table(const LineGrid &grid) const {
    std::vector<double> out((kmax + 1) * grid.size());
    std::vector<double> buf;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      hermite_psi_all(kmax, nu, grid.nodes[i], buf);
      for (std::size_t k = 0; k <= kmax; ++k)
        out[k * grid.size() + i] = buf[k];
    }
    return out;
  }
};

/// sum_k psi_k^nu(t) a_k with right quaternion coefficients, sampled on grid.
inline SampledSignal hermite_combination(const std::vector<Quaternion> &a, double nu,
                                         const LineGrid &grid) {
  SampledSignal f(grid);
  if (a.empty())
    return f;
  std::vector<double> psi;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    hermite_psi_all(a.size() - 1, nu, grid.nodes[i], psi);
    Quaternion v;
    for (std::size_t k = 0; k < a.size(); ++k)
      v += psi[k] * a[k];
    f.values[i] = v;
  }
  return f;
}

/// sqrt(nu^{k+1} / (pi k!)): the coefficient turning q^k into the unit vector f_k^nu.
inline double fock_coefficient(std::size_t k, double nu) {
  const double kd = static_cast<double>(k);
  return std::exp(0.5 * ((kd + 1.0) * std::log(nu) - std::log(kPi) - std::lgamma(kd + 1.0)));
}

/// q^k by repeated multiplication (powers of one quaternion commute).
inline Quaternion quat_pow(const Quaternion &q, std::size_t k) {
  Quaternion r{1.0};
  for (std::size_t i = 0; i < k; ++i)
    r = r * q;
  return r;
}

/// f_k^nu(q) = sqrt(nu^{k+1} / (pi k!)) q^k.
inline Quaternion fock_monomial(std::size_t k, double nu, const Quaternion &q) {
  return fock_coefficient(k, nu) * quat_pow(q, k);
}

struct FockMonomialBasis {
  double nu;
  std::size_t kmax{kDefaultKmax};

  double coefficient(std::size_t k) const { return fock_coefficient(k, nu); }
  Quaternion operator()(std::size_t k, const Quaternion &q) const {
    return fock_monomial(k, nu, q);
  }
  /// ||q^k||^2 in the Fock space, i.e. pi k! / nu^{k+1}.
  double monomial_norm2(std::size_t k) const {
    const double c = coefficient(k);
    return 1.0 / (c * c);
  }
};

/// Segal-Bargmann kernel (nu/pi)^{3/4} e^{-(nu/2)(p^2 + t^2) + nu sqrt(2) p t} for p
/// in the slice of its unit. The result stays in the same slice.
inline SliceComplex bargmann_kernel(const SliceComplex &p, double t, double nu) {
  const double a = p.re, b = p.im;
  const double re = -0.5 * nu * (a * a - b * b + t * t) + nu * kSqrt2 * a * t;
  const double im = -nu * a * b + nu * kSqrt2 * b * t;
  const double scale = std::pow(nu / kPi, 0.75);
  auto e = slice_exp(SliceComplex{re, im, p.unit});
  return {scale * e.re, scale * e.im, p.unit};
}

/// Kernel A(q, t) for arbitrary quaternion q, evaluated in the slice of q. On the
/// real axis the kernel is real.
inline Quaternion bargmann_kernel(const Quaternion &q, double t, double nu) {
  const auto d = slice_decompose(q);
  if (!d.unit) {
    const double a = d.x;
    return {std::pow(nu / kPi, 0.75) *
            std::exp(-0.5 * nu * (a * a + t * t) + nu * kSqrt2 * a * t)};
  }
  return bargmann_kernel(SliceComplex{d.x, d.y, *d.unit}, t, nu).quaternion();
}

/// Slice derivative of the kernel in q: d_S A(q, t) = nu (-q + sqrt(2) t) A(q, t).
inline Quaternion bargmann_kernel_slice_derivative(const Quaternion &q, double t, double nu) {
  return nu * ((Quaternion{kSqrt2 * t} - q) * bargmann_kernel(q, t, nu));
}

} // namespace qtf
