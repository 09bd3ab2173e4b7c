#include "catch_amalgamated.hpp"

#include <qtf/random.hpp>
#include <qtf/stft.hpp>

#include <cmath>

using namespace qtf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const LineGrid &tgrid() {
  static const LineGrid g = default_time_grid();
  return g;
}

SampledSignal window() { return sample_window(tgrid()); }

SampledSignal psi(std::size_t k) { return HermiteBasis(kWindowNu, k).sample_psi(k, tgrid()); }

// Coarser lattice for tests that only need a few cells.
TimeFreqPlan small_plan(const ImaginaryUnit &u = ImaginaryUnit::i()) {
  return {make_grid(-4.0, 4.0, 65), make_grid(-4.0, 4.0, 65), u, StftRoute::windowed};
}

} // namespace

TEST_CASE("window is a unit vector", "[stft]") {
  CHECK_THAT(norm_l2(window()), WithinAbs(1.0, 1e-10));
}

TEST_CASE("window at the origin", "[stft]") {
  const auto u = ImaginaryUnit(0, 1, 1);
  CHECK(max_abs_diff(qstft_windowed(window(), 0, 0, u), Quaternion{kSqrt2}) < 1e-12);
  CHECK(max_abs_diff(qstft_bargmann(window(), 0, 0, u), Quaternion{kSqrt2}) < 1e-12);
}

TEST_CASE("real Gaussian at zero frequency is real and positive", "[stft]") {
  const auto f = sample(tgrid(), [](double t) { return std::exp(-t * t); });
  for (double x : {-1.0, 0.0, 0.7}) {
    const auto v = qstft_windowed(f, x, 0.0, ImaginaryUnit::k());
    CHECK(v.w > 0.0);
    CHECK(abs_imag(v) == 0.0);
  }
}

TEST_CASE("routes agree", "[stft]") {
  Rng rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    const auto u = random_unit(rng);
    const auto f = random_hermite_signal(rng, 8, kWindowNu, tgrid());
    for (double x : {-1.5, 0.0, 1.1})
      for (double w : {-1.0, 0.4, 2.0})
        CHECK(abs(qstft_windowed(f, x, w, u) - qstft_bargmann(f, x, w, u)) < 1e-9);
  }
}

TEST_CASE("grid evaluation matches pointwise", "[stft]") {
  Rng rng(43);
  const auto f = random_hermite_signal(rng, 5, kWindowNu, tgrid());
  auto plan = small_plan(ImaginaryUnit(1, -2, 0.5));
  const auto V = qstft_grid(f, plan);
  plan.route = StftRoute::bargmann;
  const auto W = qstft_grid(f, plan);
  for (std::size_t ix = 0; ix < V.nx(); ix += 8)
    for (std::size_t iw = 0; iw < V.nw(); iw += 8) {
      const auto p = qstft_windowed(f, V.xgrid.nodes[ix], V.wgrid.nodes[iw], plan.unit);
      CHECK(abs(V.at(ix, iw) - p) < 1e-12);
      CHECK(abs(W.at(ix, iw) - p) < 1e-9);
    }
}

TEST_CASE("zero signal", "[stft]") {
  const SampledSignal zero(tgrid());
  const auto V = qstft_grid(zero, small_plan());
  for (const auto &v : V.values)
    CHECK(abs(v) == 0.0);
  CHECK(abs(qstft_bargmann(zero, 0.3, 0.2, ImaginaryUnit::i())) == 0.0);
  const auto r = qstft_reconstruct(V);
  for (const auto &v : r.values)
    CHECK(abs(v) == 0.0);
  const auto a = qstft_adjoint(V);
  for (const auto &v : a.values)
    CHECK(abs(v) == 0.0);
}

TEST_CASE("isometry and Moyal", "[stft]") {
  Rng rng(47);
  const auto u = ImaginaryUnit::j();
  const TimeFreqPlan plan{make_grid(-4, 4, 129), make_grid(-4, 4, 129), u};
  const auto f = random_hermite_signal(rng, 4, kWindowNu, tgrid());
  const auto g = random_hermite_signal(rng, 4, kWindowNu, tgrid());
  const auto Vf = qstft_grid(f, plan), Vg = qstft_grid(g, plan);
  CHECK_THAT(norm2_tf(Vf), WithinRel(2.0 * norm2_l2(f), 1e-5));
  const auto lhs = inner_tf(Vf, Vg), rhs = 2.0 * inner_l2(f, g);
  CHECK(abs(lhs - rhs) / abs(rhs) < 1e-5);
}

TEST_CASE("lattice mismatch is rejected", "[stft]") {
  const auto a = qstft_grid(window(), small_plan());
  const auto b = qstft_grid(window(), TimeFreqPlan{make_grid(-4, 4, 33), make_grid(-4, 4, 65)});
  CHECK_THROWS_AS(inner_tf(a, b), GridMismatch);
}

TEST_CASE("reconstruction and adjoint", "[stft]") {
  const TimeFreqPlan plan;
  const auto f0 = psi(0);
  const auto V0 = qstft_grid(f0, plan);
  CHECK(max_abs_diff(qstft_reconstruct(V0, tgrid()), f0) < 1e-5);
  CHECK(max_abs_diff(qstft_adjoint(V0, tgrid()), f0 * 2.0) < 1e-5);

  const auto f = psi(1) + psi(2) * Quaternion{0, 0, 1, 0};
  CHECK(max_abs_diff(qstft_reconstruct(qstft_grid(f, plan), tgrid()), f) < 1e-5);
}

TEST_CASE("adjoint pairing", "[stft]") {
  Rng rng(53);
  const auto plan = small_plan(ImaginaryUnit(0.2, 0.3, -1));
  const auto h = random_hermite_signal(rng, 3, kWindowNu, tgrid());
  // A test field that is itself in the range plus a structured perturbation.
  auto F = qstft_grid(random_hermite_signal(rng, 3, kWindowNu, tgrid()), plan);
  for (std::size_t ix = 0; ix < F.nx(); ++ix)
    for (std::size_t iw = 0; iw < F.nw(); ++iw) {
      const double x = F.xgrid.nodes[ix], w = F.wgrid.nodes[iw];
      F.at(ix, iw) += Quaternion{0.1, 0, 0.2, 0} * std::exp(-(x * x + w * w));
    }
  const auto lhs = inner_l2(qstft_adjoint(F, tgrid()), h);
  const auto rhs = inner_tf(F, qstft_grid(h, plan));
  CHECK(abs(lhs - rhs) / abs(rhs) < 1e-5);
}

TEST_CASE("Gabor kernel", "[stft]") {
  const auto u = ImaginaryUnit::i();
  for (double x : {0.0, 1.2})
    for (double w : {-0.5, 2.0})
      CHECK_THAT(gabor_kernel(x, w, x, w, u).w, WithinAbs(1.0, 1e-9));
  const auto a = gabor_kernel(0.3, -0.2, -0.4, 1.1, u);
  const auto b = gabor_kernel(-0.4, 1.1, 0.3, -0.2, u);
  CHECK(abs(a - conj(b)) < 1e-10);

  // Row evaluation agrees with the direct integral.
  const auto plan = small_plan(ImaginaryUnit(1, 0, 1));
  const auto K = gabor_kernel_row(0.5, -0.25, plan);
  for (std::size_t ix = 0; ix < K.nx(); ix += 16)
    for (std::size_t iw = 0; iw < K.nw(); iw += 16) {
      const auto direct =
          gabor_kernel(K.xgrid.nodes[ix], K.wgrid.nodes[iw], 0.5, -0.25, plan.unit);
      CHECK(abs(K.at(ix, iw) - direct) < 1e-12);
    }
}

TEST_CASE("reproducing kernel", "[stft]") {
  Rng rng(59);
  const auto f = random_hermite_signal(rng, 3, kWindowNu, tgrid());
  const TimeFreqPlan plan{make_grid(-5, 5, 129), make_grid(-5, 5, 129), ImaginaryUnit::k()};
  const auto V = qstft_grid(f, plan);
  for (const auto &pt : default_tf_probes())
    CHECK(abs(reproduce(V, pt.x, pt.omega) - qstft_windowed(f, pt.x, pt.omega, plan.unit)) < 1e-4);
}

TEST_CASE("Lieb functional", "[stft]") {
  const auto plan = TimeFreqPlan{};
  const auto r2 = lieb_functional(window(), 2.0, plan);
  CHECK_THAT(r2.lhs, WithinAbs(2.0, 1e-6));
  CHECK_THAT(r2.bound, WithinAbs(4.0, 1e-9));
  CHECK(r2.holds);

  const auto f = psi(3) * 0.7;
  const auto r4 = lieb_functional(f, 4.0, plan);
  CHECK(r4.holds);
  CHECK(r4.lhs < r4.bound);
  const auto r2f = lieb_functional(f, 2.0, plan);
  CHECK_THAT(r2f.lhs, WithinRel(2.0 * norm2_l2(f), 1e-6));

  CHECK_THROWS_AS(lieb_functional(window(), 1.5, plan), BadExponent);
  CHECK_THROWS_AS(lieb_functional(qstft_grid(window(), small_plan()), 1.0, 1.99), BadExponent);
}

TEST_CASE("uncertainty bounds", "[stft]") {
  CHECK_THAT(sharp_constant(4.0), WithinRel(1.0 / 8.0, 1e-15));
  CHECK_THAT(sharp_uncertainty_bound(0.2, 4.0), WithinRel(0.64 / 8.0, 1e-14));
  CHECK(weak_uncertainty_bound(1.0) == 0.0);
  CHECK(sharp_uncertainty_bound(1.0, 4.0) == 0.0);
  CHECK(weak_uncertainty_bound(1.5) == 0.0);
  CHECK_THROWS_AS(sharp_constant(2.0), BadExponent);

  const TimeFreqPlan plan;
  SECTION("eps = 1 is vacuous") {
    const auto U = rectangle_mask(plan, 0.0, 0.0, 0.0, 0.0);
    const auto r = concentration_check(window(), U, 1.0);
    CHECK(r.hypothesis);
    CHECK(r.weak_bound == 0.0);
    CHECK(r.weak_ok);
    CHECK(r.sharp_ok);
  }
  SECTION("window on [-2, 2]^2") {
    const auto U = rectangle_mask(plan, -2, 2, -2, 2);
    // The total energy of a unit signal is 2, so eps = 0 already satisfies the hypothesis.
    const auto r = concentration_check(window(), U, 0.0);
    CHECK(r.hypothesis);
    CHECK(r.energy > 2.0 * (1.0 - 1e-3));
    CHECK(r.energy <= 2.0 + 1e-9);
    // 65 x 65 nodes of spacing 1/16.
    CHECK_THAT(r.measure, WithinRel(4.0625 * 4.0625, 1e-12));
    CHECK(r.weak_ok);
    CHECK(r.sharp_ok);
    CHECK(r.measure >= r.weak_bound);
  }
  SECTION("mask must match the lattice") {
    CHECK_THROWS_AS(concentration_check(window(), CellMask(3, true), 0.5), GridMismatch);
  }
}

TEST_CASE("intertwining constant", "[stft]") {
  const auto rw = fourier_intertwine_residual(window());
  CHECK(rw.residual_one < 1e-9);
  CHECK(rw.empirical_constant == 1.0);

  const auto r1 = fourier_intertwine_residual(psi(1), ImaginaryUnit::j());
  CHECK(r1.residual_one < 1e-9);
  CHECK(r1.residual_sqrt2 > 1e-2);
  CHECK_THAT(r1.fitted_constant, WithinAbs(1.0, 1e-9));
  CHECK(r1.empirical_constant == 1.0);

  const auto r0 = fourier_intertwine_residual(SampledSignal(tgrid()));
  CHECK(r0.residual_one == 0.0);
  CHECK(r0.residual_sqrt2 == 0.0);
}

TEST_CASE("Hermite images", "[stft]") {
  for (std::size_t k = 0; k <= 8; ++k) {
    const auto r = hermite_image_residual(k, ImaginaryUnit(1, 1, 0));
    INFO("k=" << k);
    CHECK(r.residual < 1e-8);
    CHECK_THAT(r.fitted_ratio, WithinAbs(1.0, 1e-8));
  }
}
