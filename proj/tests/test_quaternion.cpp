#include "catch_amalgamated.hpp"

#include <qtf/quaternion.hpp>
#include <qtf/random.hpp>

#include <cmath>
#include <numbers>

using namespace qtf;
using Catch::Matchers::WithinAbs;

namespace {
const Quaternion one{1.0}, qi{0, 1, 0, 0}, qj{0, 0, 1, 0}, qk{0, 0, 0, 1};
}

TEST_CASE("multiplication table", "[quat]") {
  CHECK(qi * qi == -one);
  CHECK(qj * qj == -one);
  CHECK(qk * qk == -one);
  CHECK(qi * qj == qk);
  CHECK(qj * qk == qi);
  CHECK(qk * qi == qj);
  CHECK(qj * qi == -qk);
  CHECK(qi * qj * qk == -one);
}

TEST_CASE("quat_mul examples", "[quat]") {
  CHECK(quat_mul(qi, qj) == qk);
  const Quaternion q{0.3, -1.2, 2.5, 0.7};
  CHECK(quat_mul(q, one) == q);
  CHECK(quat_mul(Quaternion{1, 1, 0, 0}, Quaternion{1, 0, 1, 0}) == Quaternion{1, 1, 1, 1});
}

TEST_CASE("conjugate and modulus", "[quat]") {
  const Quaternion p{1, 2, -3, 0.5}, q{-0.25, 4, 1, -2};
  CHECK(max_abs_diff(conj(p * q), conj(q) * conj(p)) < 1e-14);
  const Quaternion pp = p * conj(p);
  CHECK_THAT(pp.w, WithinAbs(norm2(p), 1e-13));
  CHECK_THAT(abs_imag(pp), WithinAbs(0.0, 1e-13));
  CHECK(norm2(p) == 1 + 4 + 9 + 0.25);
  CHECK(max_abs_diff(p * inverse(p), one) < 1e-15);
}

TEST_CASE("imaginary unit normalizes and rejects degenerate input", "[quat]") {
  const ImaginaryUnit u(3.0, 0.0, 4.0);
  CHECK_THAT(u.ux(), WithinAbs(0.6, 1e-16));
  CHECK_THAT(u.uz(), WithinAbs(0.8, 1e-16));
  const auto I = u.quaternion();
  CHECK(max_abs_diff(I * I, -one) < 1e-15);
  CHECK_THROWS_AS(ImaginaryUnit(0.0, 0.0, 0.0), BadImaginaryUnit);
  CHECK_THROWS_AS(ImaginaryUnit(NAN, 1.0, 0.0), BadImaginaryUnit);
  CHECK_THROWS_AS(ImaginaryUnit(INFINITY, 1.0, 0.0), BadImaginaryUnit);
}

TEST_CASE("slice_decompose", "[quat]") {
  SECTION("point already in a slice") {
    const auto d = slice_decompose({1, 2, 0, 0});
    CHECK(d.x == 1.0);
    CHECK(d.y == 2.0);
    REQUIRE(d.unit);
    CHECK(*d.unit == ImaginaryUnit::i());
  }
  SECTION("real point has no unit") {
    const auto d = slice_decompose({3.0});
    CHECK(d.x == 3.0);
    CHECK(d.y == 0.0);
    CHECK_FALSE(d.unit);
    CHECK(d.recompose() == Quaternion{3.0});
  }
  SECTION("1 + i + j + k") {
    const auto d = slice_decompose({1, 1, 1, 1});
    CHECK_THAT(d.y, WithinAbs(std::sqrt(3.0), 1e-15));
    REQUIRE(d.unit);
    const double s = 1.0 / std::sqrt(3.0);
    CHECK_THAT(d.unit->ux(), WithinAbs(s, 1e-15));
    CHECK_THAT(d.unit->uy(), WithinAbs(s, 1e-15));
    CHECK_THAT(d.unit->uz(), WithinAbs(s, 1e-15));
  }
}

TEST_CASE("symplectic_split", "[quat]") {
  const auto I = ImaginaryUnit::i(), J = ImaginaryUnit::j();
  SECTION("a + b j") {
    const auto [q1, q2] = symplectic_split({2.0, 0.0, -5.0, 0.0}, I, J);
    CHECK(q1.re == 2.0);
    CHECK(q1.im == 0.0);
    CHECK(q2.re == -5.0);
    CHECK(q2.im == 0.0);
  }
  SECTION("k = i j") {
    REQUIRE(quat_mul(qi, qj) == qk);
    const auto [q1, q2] = symplectic_split(qk, I, J);
    CHECK(q1.re == 0.0);
    CHECK(q1.im == 0.0);
    CHECK(q2.re == 0.0);
    CHECK(q2.im == 1.0);
  }
  SECTION("round trip") {
    const Quaternion q{0.1, -2.0, 3.5, 1.25};
    const auto [q1, q2] = symplectic_split(q, I, J);
    CHECK(max_abs_diff(symplectic_join(q1, q2, J), q) < 1e-15);
  }
  SECTION("non-orthogonal units") {
    CHECK_THROWS_AS(symplectic_split(qk, I, ImaginaryUnit(1.0, 1.0, 0.0)), NonOrthogonalUnits);
    CHECK_THROWS_AS(SymplecticFrame(I, ImaginaryUnit(1e-9, 1.0, 0.0)), NonOrthogonalUnits);
  }
}

TEST_CASE("slice_exp", "[quat]") {
  const auto I = ImaginaryUnit::i();
  const auto e0 = slice_exp({0.0, 0.0, I});
  CHECK(e0.re == 1.0);
  CHECK(e0.im == 0.0);
  const auto epi = slice_exp({0.0, std::numbers::pi, I});
  CHECK_THAT(epi.re, WithinAbs(-1.0, 1e-15));
  CHECK_THAT(epi.im, WithinAbs(0.0, 1e-15));
  const auto quarter = slice_exp({0.0, 2.0 * std::numbers::pi * 0.25, I});
  CHECK(max_abs_diff(quarter.quaternion(), qi) < 1e-15);
  CHECK_THAT(abs(slice_exp({0.0, 123.4, ImaginaryUnit(1, 2, 3)})), WithinAbs(1.0, 1e-15));
}

TEST_CASE("slice arithmetic needs a shared unit", "[quat]") {
  const SliceComplex a{1, 2, ImaginaryUnit::i()}, b{3, 4, ImaginaryUnit::j()};
  CHECK_THROWS_AS(a * b, BadImaginaryUnit);
  CHECK_THROWS_AS(a + b, BadImaginaryUnit);
}

TEST_CASE("frame split and join", "[quat]") {
  const ImaginaryUnit I(1.0, -2.0, 0.5);
  const SymplecticFrame frame(I);
  CHECK(std::fabs(frame.I().dot(frame.J())) < 1e-15);
  const Quaternion q{0.3, 1.1, -0.7, 2.2};
  const auto [a, b] = frame.split(q);
  CHECK(max_abs_diff(frame.join(a, b), q) < 1e-15);
  // Left multiplication by c in C_I acts on both components.
  const std::complex<double> c(0.4, -1.3);
  const auto lhs = frame.embed(c) * q;
  CHECK(max_abs_diff(frame.join(c * a, c * b), lhs) < 1e-14);
}
