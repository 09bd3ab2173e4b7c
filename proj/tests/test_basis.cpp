#include "catch_amalgamated.hpp"

#include <qtf/basis.hpp>

#include <cmath>
#include <numbers>

using namespace qtf;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

struct HermiteFixture {
  int k;
  double nu, t, value;
};

// psi_k^nu(t) from symbolic differentiation of e^{-nu x^2} (Rodrigues form, exact
// arithmetic, 20 digits), normalized by ||h_k^nu||.
constexpr HermiteFixture kSymbolic[] = {
    {0, 1, -1.3, 0.32265150456496373259},      {0, 1, 0.4, 0.69337626828415022222},
    {0, 1, 2.2, 0.066791298328884871027},      {0, kTwoPi, -0.7, 0.25510154303195480365},
    {0, kTwoPi, 0.25, 0.97720116666919912511}, {0, kTwoPi, 1.1, 0.026568198708235692189},
    {0, 0.5, 3.0, 0.066572129393147751540},    {1, 1, -1.3, -0.59318757377861318347},
    {1, 1, 0.4, 0.39223284897403642200},       {1, 1, 2.2, 0.20780575187947615267},
    {1, kTwoPi, -0.7, -0.63301799724649846062}, {1, kTwoPi, 0.25, 0.86602198548609249202},
    {1, kTwoPi, 1.1, 0.10359999344647768833},  {1, 0.5, 3.0, 0.19971638817944324585},
    {2, 1, -1.3, 0.54299477907426906541},      {2, 1, 0.4, -0.33339792162793090268},
    {2, 1, 2.2, 0.40994407416223936386},       {2, kTwoPi, -0.7, 0.93033453620480612607},
    {2, kTwoPi, 0.25, -0.14828677271731699814}, {2, kTwoPi, 1.1, 0.26686878663647495069},
    {2, 0.5, 3.0, 0.37658883305538444785},     {3, 1, -1.3, -0.092023768909419757613},
    {3, 1, 0.4, -0.42914408535388798941},      {3, 1, 2.2, 0.56670677092840368192},
    {3, kTwoPi, -0.7, -0.81599361909525964110}, {3, kTwoPi, 0.25, -0.78297689763604583916},
    {3, kTwoPi, 1.1, 0.51621766470804724614},  {3, 0.5, 3.0, 0.48920324431124978707},
    {4, 1, -1.3, -0.38565545246658310144},     {4, 1, 0.4, 0.16735079255478833996},
    {4, 1, 2.2, 0.52656685911378118086},       {4, kTwoPi, -0.7, 0.20672438036442965544},
    {4, kTwoPi, 0.25, -0.21852749212786016143}, {4, kTwoPi, 1.1, 0.77535403778463743222},
    {4, 0.5, 3.0, 0.40766937025937480824},     {5, 1, -1.3, 0.39939146281375078378},
    {5, 1, 0.4, 0.42617491261390459357},       {5, 1, 2.2, 0.22578832542851322664},
    {5, kTwoPi, -0.7, 0.50043829426309951243}, {5, kTwoPi, 0.25, 0.61370622968766410230},
    {5, kTwoPi, 1.1, 0.89039288644543940442},  {5, 0.5, 3.0, 0.10938917090933919067},
    {6, 1, -1.3, 0.052288252096856805054},     {6, 1, 0.4, -0.054348793289907407490},
    {6, 1, 2.2, -0.19389788692684498422},      {6, kTwoPi, -0.7, -0.69567756576734999069},
    {6, kTwoPi, 0.25, 0.42152669365521175748}, {6, kTwoPi, 1.1, 0.70963854038742546679},
    {6, 0.5, 3.0, -0.23817569076798433518},
};

} // namespace

TEST_CASE("recurrence matches symbolic Hermite functions", "[basis]") {
  for (const auto &fx : kSymbolic) {
    INFO("k=" << fx.k << " nu=" << fx.nu << " t=" << fx.t);
    CHECK_THAT(hermite_psi(static_cast<std::size_t>(fx.k), fx.nu, fx.t),
               WithinAbs(fx.value, 1e-10));
  }
}

TEST_CASE("hermite_psi examples", "[basis]") {
  CHECK_THAT(hermite_psi(0, 1.0, 0.0), WithinRel(std::pow(std::numbers::pi, -0.25), 1e-15));
  CHECK(hermite_psi(1, 1.0, 0.0) == 0.0);
  CHECK(hermite_psi(3, kTwoPi, 0.0) == 0.0);
  // Unnormalized h_2^nu = (4 nu^2 t^2 - 2 nu) e^{-nu t^2 / 2}.
  const double nu = 1.7, t = 0.8;
  CHECK_THAT(hermite_h(2, nu, t),
             WithinRel((4 * nu * nu * t * t - 2 * nu) * std::exp(-nu * t * t / 2), 1e-13));
}

TEST_CASE("hermite norms", "[basis]") {
  const HermiteBasis b(kTwoPi, 30);
  for (std::size_t k = 0; k <= 30; ++k) {
    const double expected =
        std::pow(2.0 * kTwoPi, static_cast<double>(k)) * std::tgamma(k + 1.0) *
        std::sqrt(std::numbers::pi / kTwoPi);
    CHECK_THAT(b.norms[k] * b.norms[k], WithinRel(expected, 1e-10));
  }
  // ||h_k||^2 by quadrature for small k.
  const auto g = default_time_grid(1.0);
  const HermiteBasis b1(1.0, 6);
  for (std::size_t k = 0; k <= 6; ++k)
    CHECK_THAT(norm2_l2(b1.sample_h(k, g)), WithinRel(b1.norms[k] * b1.norms[k], 1e-10));
}

TEST_CASE("hermite orthonormality to k = 20", "[basis]") {
  for (double nu : {1.0, kTwoPi}) {
    const auto g = default_time_grid(nu);
    const HermiteBasis b(nu, 20);
    const auto tab = b.table(g);
    const std::size_t n = g.size();
    double worst = 0.0;
    for (std::size_t j = 0; j <= 20; ++j)
      for (std::size_t k = j; k <= 20; ++k) {
        const double ip = pairwise_sum<double>(n, [&](std::size_t i) {
          return g.weights[i] * tab[j * n + i] * tab[k * n + i];
        });
        worst = std::max(worst, std::fabs(ip - (j == k ? 1.0 : 0.0)));
      }
    INFO("nu=" << nu);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("fock monomials", "[basis]") {
  const double nu = 2.3;
  CHECK_THAT(fock_monomial(0, nu, {0.4, 1, -2, 3}).w, WithinRel(std::sqrt(nu / std::numbers::pi), 1e-15));
  // sqrt(pi^2 / pi) = sqrt(pi).
  const auto f1 = fock_monomial(1, std::numbers::pi, {0, 1, 0, 0});
  CHECK(max_abs_diff(f1, Quaternion{0, std::sqrt(std::numbers::pi), 0, 0}) < 1e-15);
  const Quaternion q{0.3, -0.5, 0.8, 0.1};
  for (std::size_t k = 0; k <= 12; ++k)
    CHECK_THAT(abs(fock_monomial(k, nu, q)),
               WithinRel(fock_coefficient(k, nu) * std::pow(abs(q), static_cast<double>(k)), 1e-13));
  FockMonomialBasis basis{nu};
  CHECK(basis.coefficient(3) > 0.0);
  CHECK_THAT(basis.monomial_norm2(2), WithinRel(std::numbers::pi * 2.0 / std::pow(nu, 3), 1e-14));
}

TEST_CASE("kernel at the origin", "[basis]") {
  const double nu = 1.4, t = 0.9;
  const auto a = bargmann_kernel(Quaternion{}, t, nu);
  CHECK_THAT(a.w, WithinRel(std::pow(nu / std::numbers::pi, 0.75) * std::exp(-nu * t * t / 2), 1e-15));
  CHECK(abs_imag(a) == 0.0);
}

TEST_CASE("kernel equals its generating series", "[basis]") {
  const double nu = 1.0;
  const std::size_t K = 60;
  for (const auto &unit : {ImaginaryUnit::i(), ImaginaryUnit(1.0, 1.0, 0.0), ImaginaryUnit(-1, 2, 2)}) {
    double worst = 0.0;
    std::vector<double> psi;
    for (double r : {0.0, 0.5, 1.0, 1.5, 2.0})
      for (double th : {0.0, 0.7, 1.9, 3.0, 4.4, 5.5}) {
        const auto q = SliceComplex{r * std::cos(th), r * std::sin(th), unit}.quaternion();
        for (double t = -2.0; t <= 2.0; t += 0.25) {
          hermite_psi_all(K, nu, t, psi);
          Quaternion series;
          for (std::size_t k = 0; k <= K; ++k)
            series += fock_monomial(k, nu, q) * psi[k];
          worst = std::max(worst, abs(series - bargmann_kernel(q, t, nu)));
        }
      }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("kernel slice derivative", "[basis]") {
  // d_S A = lim (A(q + h) - A(q)) / h along the real direction (slice functions).
  const double nu = 1.0, h = 1e-6;
  const ImaginaryUnit unit(0.0, 1.0, -1.0);
  for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double b : {-1.0, -0.5, 0.3, 0.5, 1.0}) {
      const auto q = SliceComplex{a, b, unit}.quaternion();
      for (double t : {-0.8, 0.6}) {
        const auto fd = (bargmann_kernel(q + Quaternion{h}, t, nu) -
                         bargmann_kernel(q - Quaternion{h}, t, nu)) / (2 * h);
        CHECK(abs(fd - bargmann_kernel_slice_derivative(q, t, nu)) < 1e-8);
      }
    }
}
