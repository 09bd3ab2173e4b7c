#pragma once

// Quaternion arithmetic, the sphere of imaginary units, slice and symplectic
// decompositions, and slice-plane exponentials.

#include <qtf/error.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <ostream>
#include <utility>

namespace qtf {

/// w + x i + y j + z k. Multiplication is the (non-commutative) Hamilton product.
template <std::floating_point T> struct basic_quaternion {
  T w{0}, x{0}, y{0}, z{0};

  constexpr basic_quaternion() = default;
  constexpr basic_quaternion(T w_, T x_ = 0, T y_ = 0, T z_ = 0)
      : w(w_), x(x_), y(y_), z(z_) {}

  constexpr bool operator==(const basic_quaternion &) const = default;

  constexpr basic_quaternion &operator+=(const basic_quaternion &o) {
    w += o.w;
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr basic_quaternion &operator-=(const basic_quaternion &o) {
    w -= o.w;
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr basic_quaternion &operator*=(T s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr basic_quaternion &operator/=(T s) { return *this *= T(1) / s; }
  constexpr basic_quaternion &operator*=(const basic_quaternion &o) {
    return *this = *this * o;
  }

  friend constexpr basic_quaternion operator+(basic_quaternion a,
                                              const basic_quaternion &b) {
    return a += b;
  }
  friend constexpr basic_quaternion operator-(basic_quaternion a,
                                              const basic_quaternion &b) {
    return a -= b;
  }
  friend constexpr basic_quaternion operator-(const basic_quaternion &a) {
    return {-a.w, -a.x, -a.y, -a.z};
  }
  friend constexpr basic_quaternion operator*(basic_quaternion a, T s) {
    return a *= s;
  }
  friend constexpr basic_quaternion operator*(T s, basic_quaternion a) {
    return a *= s;
  }
  friend constexpr basic_quaternion operator/(basic_quaternion a, T s) {
    return a /= s;
  }

  // Hamilton product: i^2 = j^2 = k^2 = ijk = -1.
  friend constexpr basic_quaternion operator*(const basic_quaternion &p,
                                              const basic_quaternion &q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }

  friend std::ostream &operator<<(std::ostream &os, const basic_quaternion &q) {
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
  }
};

using Quaternion = basic_quaternion<double>;

template <std::floating_point T>
constexpr basic_quaternion<T> conj(const basic_quaternion<T> &q) {
  return {q.w, -q.x, -q.y, -q.z};
}

/// |q|^2 = q conj(q) = w^2 + x^2 + y^2 + z^2.
template <std::floating_point T> constexpr T norm2(const basic_quaternion<T> &q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

template <std::floating_point T> T abs(const basic_quaternion<T> &q) {
  return std::hypot(std::hypot(q.w, q.x), std::hypot(q.y, q.z));
}

template <std::floating_point T> T abs_imag(const basic_quaternion<T> &q) {
  return std::hypot(q.x, std::hypot(q.y, q.z));
}

/// Real part of conj(p) q, i.e. the Euclidean dot product in R^4.
template <std::floating_point T>
constexpr T dot4(const basic_quaternion<T> &p, const basic_quaternion<T> &q) {
  return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

template <std::floating_point T>
basic_quaternion<T> inverse(const basic_quaternion<T> &q) {
  return conj(q) / norm2(q);
}

inline Quaternion quat_mul(const Quaternion &p, const Quaternion &q) { return p * q; }

/// Largest componentwise difference; the tolerance metric used throughout the tests.
inline double max_abs_diff(const Quaternion &a, const Quaternion &b) {
  return std::max({std::fabs(a.w - b.w), std::fabs(a.x - b.x), std::fabs(a.y - b.y),
                   std::fabs(a.z - b.z)});
}

/// A unit pure quaternion I (I^2 = -1). Construction normalizes the direction.
class ImaginaryUnit {
public:
  ImaginaryUnit(double ux, double uy, double uz) {
    const double n = std::hypot(ux, std::hypot(uy, uz));
    if (!(n > 0.0) || !std::isfinite(n))
      throw BadImaginaryUnit("imaginary unit direction must be finite and nonzero");
    ux_ = ux / n;
    uy_ = uy / n;
    uz_ = uz / n;
  }

  static ImaginaryUnit i() { return {1.0, 0.0, 0.0}; }
  static ImaginaryUnit j() { return {0.0, 1.0, 0.0}; }
  static ImaginaryUnit k() { return {0.0, 0.0, 1.0}; }

  double ux() const noexcept { return ux_; }
  double uy() const noexcept { return uy_; }
  double uz() const noexcept { return uz_; }

  Quaternion quaternion() const noexcept { return {0.0, ux_, uy_, uz_}; }

  double dot(const ImaginaryUnit &o) const noexcept {
    return ux_ * o.ux_ + uy_ * o.uy_ + uz_ * o.uz_;
  }

  /// Component of the imaginary part of q along this unit.
  double project(const Quaternion &q) const noexcept {
    return ux_ * q.x + uy_ * q.y + uz_ * q.z;
  }

  bool operator==(const ImaginaryUnit &) const = default;

  friend std::ostream &operator<<(std::ostream &os, const ImaginaryUnit &u) {
    return os << '[' << u.ux_ << ", " << u.uy_ << ", " << u.uz_ << ']';
  }

private:
  double ux_, uy_, uz_;
};

/// Tolerance on |I . J| for units treated as orthogonal.
inline constexpr double kOrthogonalityTolerance = 1e-10;

/// I x J for orthogonal units; equals the Hamilton product I J.
inline ImaginaryUnit cross(const ImaginaryUnit &a, const ImaginaryUnit &b) {
  return {a.uy() * b.uz() - a.uz() * b.uy(), a.uz() * b.ux() - a.ux() * b.uz(),
          a.ux() * b.uy() - a.uy() * b.ux()};
}

/// A deterministic unit orthogonal to I.
inline ImaginaryUnit orthogonal_unit(const ImaginaryUnit &u) {
  // Cross with the basis axis least aligned with u.
  const double ax = std::fabs(u.ux()), ay = std::fabs(u.uy()), az = std::fabs(u.uz());
  if (ax <= ay && ax <= az)
    return cross(u, ImaginaryUnit::i());
  if (ay <= az)
    return cross(u, ImaginaryUnit::j());
  return cross(u, ImaginaryUnit::k());
}

/// re + im I inside the slice C_I.
struct SliceComplex {
  double re{0.0};
  double im{0.0};
  ImaginaryUnit unit{ImaginaryUnit::i()};

  Quaternion quaternion() const noexcept {
    return {re, im * unit.ux(), im * unit.uy(), im * unit.uz()};
  }
  std::complex<double> complex() const noexcept { return {re, im}; }

  friend SliceComplex conj(const SliceComplex &z) { return {z.re, -z.im, z.unit}; }
  friend double abs(const SliceComplex &z) { return std::hypot(z.re, z.im); }
};

namespace detail {
inline void require_same_slice(const SliceComplex &a, const SliceComplex &b) {
  if (!(a.unit == b.unit))
    throw BadImaginaryUnit("slice arithmetic requires a shared imaginary unit");
}
} // namespace detail

inline SliceComplex operator*(const SliceComplex &a, const SliceComplex &b) {
  detail::require_same_slice(a, b);
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re, a.unit};
}

inline SliceComplex operator+(const SliceComplex &a, const SliceComplex &b) {
  detail::require_same_slice(a, b);
  return {a.re + b.re, a.im + b.im, a.unit};
}

/// Left multiplication of a quaternion by a slice element.
inline Quaternion operator*(const SliceComplex &a, const Quaternion &q) {
  return a.quaternion() * q;
}

/// e^{x + I y} = e^x (cos y + I sin y).
inline SliceComplex slice_exp(const SliceComplex &z) {
  const double m = std::exp(z.re);
  return {m * std::cos(z.im), m * std::sin(z.im), z.unit};
}

/// e^{I theta} on the unit circle of C_I.
inline SliceComplex slice_phase(double theta, const ImaginaryUnit &unit) {
  return {std::cos(theta), std::sin(theta), unit};
}

struct SliceDecomposition {
  double x{0.0};
  double y{0.0};
  /// Empty on the real axis, where no unit is singled out.
  std::optional<ImaginaryUnit> unit;

  Quaternion recompose() const {
    if (!unit)
      return {x};
    return {x, y * unit->ux(), y * unit->uy(), y * unit->uz()};
  }
};

/// q = x + I y with y > 0 and I in S whenever Im(q) != 0.
inline SliceDecomposition slice_decompose(const Quaternion &q) {
  const double y = abs_imag(q);
  if (y == 0.0)
    return {q.w, 0.0, std::nullopt};
  return {q.w, y, ImaginaryUnit(q.x, q.y, q.z)};
}

inline void require_orthogonal(const ImaginaryUnit &a, const ImaginaryUnit &b) {
  if (std::fabs(a.dot(b)) > kOrthogonalityTolerance)
    throw NonOrthogonalUnits("imaginary units are not orthogonal (|I.J| = " +
                             std::to_string(std::fabs(a.dot(b))) + ")");
}

/// q = q1 + q2 J with q1, q2 in C_I.
inline std::pair<SliceComplex, SliceComplex>
symplectic_split(const Quaternion &q, const ImaginaryUnit &I, const ImaginaryUnit &J) {
  require_orthogonal(I, J);
  const ImaginaryUnit K = cross(I, J);
  return {SliceComplex{q.w, I.project(q), I}, SliceComplex{J.project(q), K.project(q), I}};
}

inline Quaternion symplectic_join(const SliceComplex &q1, const SliceComplex &q2,
                                  const ImaginaryUnit &J) {
  return q1.quaternion() + q2.quaternion() * J.quaternion();
}

/// Symplectic components (q1, q2) of a quaternion, summed as a unit.
struct SymplecticPair {
  std::complex<double> a, b;

  SymplecticPair &operator+=(const SymplecticPair &o) {
    a += o.a;
    b += o.b;
    return *this;
  }
};

/// Orthonormal frame (I, J, K = IJ) used by the transform kernels: a quaternion is
/// handled as the pair of std::complex numbers (q1, q2) with q = q1 + q2 J, where
/// the complex unit stands for I. Left multiplication by an element of C_I then
/// acts componentwise: c (q1 + q2 J) = c q1 + (c q2) J.
class SymplecticFrame {
public:
  explicit SymplecticFrame(const ImaginaryUnit &I)
      : I_(I), J_(orthogonal_unit(I)), K_(cross(I_, J_)) {}
  SymplecticFrame(const ImaginaryUnit &I, const ImaginaryUnit &J)
      : I_(I), J_(J), K_(cross(I, J)) {
    require_orthogonal(I, J);
  }

  const ImaginaryUnit &I() const noexcept { return I_; }
  const ImaginaryUnit &J() const noexcept { return J_; }

  std::pair<std::complex<double>, std::complex<double>>
  split(const Quaternion &q) const noexcept {
    return {{q.w, I_.project(q)}, {J_.project(q), K_.project(q)}};
  }

  Quaternion join(const std::complex<double> &a,
                  const std::complex<double> &b) const noexcept {
    const double s = a.imag(), c = b.real(), d = b.imag();
    return {a.real(), s * I_.ux() + c * J_.ux() + d * K_.ux(),
            s * I_.uy() + c * J_.uy() + d * K_.uy(),
            s * I_.uz() + c * J_.uz() + d * K_.uz()};
  }

  SymplecticPair pair(const Quaternion &q) const noexcept {
    auto [a, b] = split(q);
    return {a, b};
  }
  Quaternion join(const SymplecticPair &p) const noexcept { return join(p.a, p.b); }

  Quaternion embed(const std::complex<double> &a) const noexcept {
    return {a.real(), a.imag() * I_.ux(), a.imag() * I_.uy(), a.imag() * I_.uz()};
  }

private:
  ImaginaryUnit I_, J_, K_;
};

} // namespace qtf
