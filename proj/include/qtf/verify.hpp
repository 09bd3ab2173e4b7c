#pragma once

// Executable identity checks. Every check is a residual against a tolerance on a fixed,
// seeded fixture set; grouped by the criterion they establish so both the CLI report
// and the acceptance runner share them.

#include <qtf/bargmann.hpp>
#include <qtf/basis.hpp>
#include <qtf/qft.hpp>
#include <qtf/quadrature.hpp>
#include <qtf/quaternion.hpp>
#include <qtf/random.hpp>
#include <qtf/stft.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace qtf::verify {

struct Check {
  std::string name;
  std::string identity;
  double residual;
  double tolerance;
  bool pass;
};

inline Check make_check(std::string name, std::string identity, double residual,
                        double tolerance) {
  const bool pass = std::isfinite(residual) && residual <= tolerance;
  return {std::move(name), std::move(identity), residual, tolerance, pass};
}

inline bool all_pass(const std::vector<Check> &checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

/// Measured values of the constants the theory leaves in doubt.
struct EmpiricalConstants {
  bool has_intertwine = false;
  IntertwineReport intertwine{};
  std::vector<EigenEstimate> eigen;
  ImaginaryUnit eigen_unit{ImaginaryUnit::i()};
  double eigen_residual_unit = 0.0; // max_k |lambda_k - (-I)^k|
  double eigen_residual_half = 0.0; // max_k |lambda_k - 2^{-1/2} (-I)^k|
  std::vector<HermiteImageReport> hermite_image;
};

inline constexpr double kTwoPi = 2.0 * kPi;

namespace detail {

inline Quaternion minus_unit_power(std::size_t k, const ImaginaryUnit &I) {
  Quaternion r{1.0};
  const Quaternion m = -I.quaternion();
  for (std::size_t i = 0; i < k; ++i)
    r = r * m;
  return r;
}

} // namespace detail

// ---------------------------------------------------------------- basis / Bargmann

inline std::vector<Check> hermite_orthonormality() {
  std::vector<Check> out;
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
    out.push_back(make_check("hermite_orthonormality_nu_" + std::string(nu == 1.0 ? "1" : "2pi"),
                             "orthonormality of the weighted Hermite functions, k <= 20", worst,
                             1e-9));
  }
  return out;
}

inline std::vector<Check> kernel_generating_function() {
  const double nu = 1.0;
  const std::size_t K = 60;
  std::vector<Check> out;
  const std::pair<const char *, ImaginaryUnit> slices[] = {
      {"i", ImaginaryUnit::i()}, {"i+j", ImaginaryUnit(1.0, 1.0, 0.0)}};
  std::vector<double> psi;
  for (const auto &[label, unit] : slices) {
    double worst = 0.0;
    for (int ir = 0; ir <= 8; ++ir)
      for (int ith = 0; ith < 12; ++ith) {
        const double r = 0.25 * ir, th = kPi * ith / 6.0 + 0.1;
        const auto q = SliceComplex{r * std::cos(th), r * std::sin(th), unit}.quaternion();
        for (int it = 0; it <= 16; ++it) {
          const double t = -2.0 + 0.25 * it;
          hermite_psi_all(K, nu, t, psi);
          Quaternion series;
          for (std::size_t k = 0; k <= K; ++k)
            series += fock_monomial(k, nu, q) * psi[k];
          worst = std::max(worst, abs(series - bargmann_kernel(q, t, nu)));
        }
      }
    out.push_back(make_check(std::string("kernel_series_slice_") + label,
                             "kernel equals sum_k f_k(q) psi_k(t), K = 60, |q|,|t| <= 2", worst,
                             1e-8));
  }
  return out;
}

inline std::vector<Check> bargmann_unitarity() {
  const double nu = 1.0;
  const auto grid = default_time_grid(nu);
  const auto plane = default_plane_grid(nu);
  const auto unit = ImaginaryUnit::i();
  Rng rng(kDefaultSeed + 3);
  const std::size_t count = 20;
  std::vector<SampledSignal> f;
  std::vector<CoefficientSequence> c;
  std::vector<PlaneSamples> F;
  for (std::size_t m = 0; m < count; ++m) {
    f.push_back(random_hermite_signal(rng, 10, nu, grid));
    c.push_back(bargmann_coefficients(f.back(), nu));
    F.push_back(sample_plane(plane, unit, [&](const Quaternion &q) { return c.back().evaluate(q); }));
  }
  double plane_vs_l2 = 0.0, coeff_vs_l2 = 0.0, plane_vs_coeff = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const std::size_t o = (m + 1) % count;
    for (std::size_t g : {m, o}) {
      const Quaternion l2 = inner_l2(f[m], f[g]);
      const Quaternion viap = inner_fock(F[m], F[g], nu);
      const Quaternion viac = fock_inner(c[m], c[g]);
      plane_vs_l2 = std::max(plane_vs_l2, abs(viap - l2));
      coeff_vs_l2 = std::max(coeff_vs_l2, abs(viac - l2));
      plane_vs_coeff = std::max(plane_vs_coeff, abs(viap - viac));
    }
  }
  const char *id = "Bargmann unitarity <Bf, Bg>_F = <f, g>";
  return {make_check("bargmann_unitarity_plane", id, plane_vs_l2, 1e-7),
          make_check("bargmann_unitarity_coefficients", id, coeff_vs_l2, 1e-7),
          make_check("bargmann_fock_routes_agree", id, plane_vs_coeff, 1e-7)};
}

inline std::vector<Check> operator_equivalences() {
  const double nu = 1.0;
  const auto grid = default_time_grid(nu);
  const HermiteBasis b(nu, 5);
  std::vector<Check> out;
  for (std::size_t k : {0u, 1u, 5u}) {
    const auto f = b.sample_psi(k, grid);
    out.push_back(make_check("position_operator_psi_" + std::to_string(k),
                             "(d_S + q) B phi = sqrt(2) B(x phi)",
                             position_equivalence_residual(f, nu), 1e-6));
    out.push_back(make_check("momentum_operator_psi_" + std::to_string(k),
                             "M_q B phi = B((X - D) phi / sqrt(2))",
                             momentum_equivalence_residual(f, nu), 1e-6));
  }
  return out;
}

// ---------------------------------------------------------------- QFT

inline std::vector<Check> qft_properties() {
  Rng rng(kDefaultSeed + 5);
  const double nu = kTwoPi;
  std::vector<Check> out;
  double ratio = 0.0, inner = 0.0, roundtrip = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0, com = 0.0,
         split = 0.0;
  for (int m = 0; m < 3; ++m) {
    QftPlan plan;
    plan.unit = m == 0 ? ImaginaryUnit::i() : random_unit(rng);
    const auto &I = plan.unit;
    const auto f = random_hermite_signal(rng, 6, nu, plan.tgrid);
    const auto g = random_hermite_signal(rng, 6, nu, plan.tgrid);
    const auto Ff = qft_forward(f, plan), Fg = qft_forward(g, plan);
    ratio = std::max(ratio, std::fabs(norm_l2(Ff) / norm_l2(f) - 1.0));
    inner = std::max(inner, abs(inner_l2(Ff, Fg) - inner_l2(f, g)));
    roundtrip = std::max(roundtrip, max_abs_diff(qft_inverse(Ff, plan), f));

    const double x = m == 1 ? -1.25 : 0.37, w = m == 2 ? -1.1 : 0.6;
    f1 = std::max(f1, max_abs_diff(qft_forward(translate(f, x), plan), modulate(Ff, -x, I)));
    f2 = std::max(f2, max_abs_diff(qft_forward(modulate(f, w, I), plan), translate(Ff, w)));
    f3 = std::max(f3, max_abs_diff(qft_forward(modulate(translate(f, x), w, I), plan),
                                   translate(modulate(Ff, -x, I), w)));
    auto rhs = modulate(translate(f, x), w, I);
    const auto phase = slice_phase(-2.0 * kPi * w * x, I);
    for (auto &v : rhs.values)
      v = phase * v;
    com = std::max(com, max_abs_diff(translate(modulate(f, w, I), x), rhs));

    // F(psi) = F(psi_1) + F(psi_2) J on the symplectic parts.
    const SymplecticFrame frame(I);
    auto p1 = f, p2 = f;
    for (std::size_t i = 0; i < f.size(); ++i) {
      const auto [a, b] = frame.split(f.values[i]);
      p1.values[i] = frame.embed(a);
      p2.values[i] = frame.embed(b);
    }
    const auto joined = qft_forward(p1, plan) + qft_forward(p2, plan) * frame.J().quaternion();
    split = std::max(split, max_abs_diff(joined, Ff));
  }
  out.push_back(make_check("qft_plancherel_norm", "Plancherel ||F_I f|| = ||f||", ratio, 1e-8));
  out.push_back(make_check("qft_plancherel_inner", "Parseval <F_I f, F_I g> = <f, g>", inner, 1e-7));
  out.push_back(make_check("qft_inversion", "inverse QFT round trip", roundtrip, 1e-7));
  out.push_back(make_check("qft_translation", "F_I(tau_x f) = M_{-x} F_I f", f1, 1e-7));
  out.push_back(make_check("qft_modulation", "F_I(M_w f) = tau_w F_I f", f2, 1e-7));
  out.push_back(make_check("qft_time_frequency_shift", "F_I(M_w tau_x f) = tau_w M_{-x} F_I f",
                           f3, 1e-7));
  out.push_back(make_check("commutation_lemma", "tau_x M_w = e^{-2 pi I w x} M_w tau_x", com,
                           1e-7));
  out.push_back(make_check("qft_symplectic_factorization", "F_I f = F_I f_1 + F_I f_2 J", split,
                           1e-12));
  return out;
}

/// Eigenvalues of F_I on h_k^{2 pi} for k <= 6.
inline std::vector<Check> qft_eigenvalues(EmpiricalConstants &ec) {
  QftPlan plan;
  plan.unit = ImaginaryUnit(1.0, -1.0, 2.0);
  ec.eigen_unit = plan.unit;
  ec.eigen.clear();
  double modulus = 0.0, geometric = 0.0, stability = 0.0, unit_fit = 0.0, half_fit = 0.0;
  for (std::size_t k = 0; k <= 6; ++k)
    ec.eigen.push_back(qft_eigenvalue(k, plan));
  const Quaternion l1 = ec.eigen[1].lambda;
  Quaternion power{1.0};
  for (const auto &e : ec.eigen) {
    modulus = std::max(modulus, std::fabs(abs(e.lambda) - 1.0));
    geometric = std::max(geometric, abs(e.lambda - power));
    stability = std::max(stability, e.residual);
    const auto expect = detail::minus_unit_power(e.k, plan.unit);
    unit_fit = std::max(unit_fit, abs(e.lambda - expect));
    half_fit = std::max(half_fit, abs(e.lambda - expect / kSqrt2));
    power = power * l1;
  }
  ec.eigen_residual_unit = unit_fit;
  ec.eigen_residual_half = half_fit;
  return {make_check("qft_eigenvalue_modulus", "F_I h_k = lambda_k h_k with |lambda_k| = 1",
                     modulus, 1e-6),
          make_check("qft_eigenvalue_progression", "lambda_k = lambda_1^k", geometric, 1e-6),
          make_check("qft_eigenvector_residual", "||F_I h_k - h_k lambda_k|| / ||h_k||",
                     stability, 1e-6)};
}

// ---------------------------------------------------------------- QSTFT

inline std::vector<Check> route_equivalence() {
  Rng rng(kDefaultSeed + 7);
  const auto grid = default_time_grid();
  double worst = 0.0;
  for (int m = 0; m < 10; ++m) {
    const auto unit = m == 0 ? ImaginaryUnit::i() : random_unit(rng);
    const auto f = random_hermite_signal(rng, 6, kWindowNu, grid);
    for (int ix = -2; ix <= 2; ++ix)
      for (int iw = -2; iw <= 2; ++iw) {
        const double x = 2.0 * ix, w = 2.0 * iw;
        worst = std::max(worst, abs(qstft_windowed(f, x, w, unit) - qstft_bargmann(f, x, w, unit)));
      }
  }
  return {make_check("qstft_route_equivalence",
                     "V f = sqrt(2) F_I(f tau_x phi) (Bargmann route = windowed route)", worst,
                     1e-7)};
}

inline std::vector<Check> isometry_moyal() {
  Rng rng(kDefaultSeed + 11);
  const auto grid = default_time_grid();
  const TimeFreqPlan plan;
  std::vector<SampledSignal> f;
  std::vector<TimeFreqGrid> V;
  for (int m = 0; m < 4; ++m) {
    f.push_back(random_hermite_signal(rng, 5, kWindowNu, grid));
    V.push_back(qstft_grid(f.back(), plan));
  }
  double iso = 0.0, moyal = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) {
    const double n2 = norm2_l2(f[m]);
    iso = std::max(iso, std::fabs(norm2_tf(V[m]) - 2.0 * n2) / (2.0 * n2));
    const std::size_t o = (m + 1) % f.size();
    const double scale = 2.0 * norm_l2(f[m]) * norm_l2(f[o]);
    moyal = std::max(moyal, abs(inner_tf(V[m], V[o]) - 2.0 * inner_l2(f[m], f[o])) / scale);
  }
  // Isometry in a generic slice as well.
  const auto Vg = qstft_grid(f[1], TimeFreqPlan{plan.xgrid, plan.wgrid, ImaginaryUnit(0.3, -1.0, 0.5)});
  iso = std::max(iso, std::fabs(norm2_tf(Vg) - 2.0 * norm2_l2(f[1])) / (2.0 * norm2_l2(f[1])));
  return {make_check("qstft_isometry", "||V f||^2 = 2 ||f||^2 (relative)", iso, 1e-5),
          make_check("qstft_moyal", "<V f, V g> = 2 <f, g> (relative)", moyal, 1e-5)};
}

inline std::vector<Check> reconstruction_adjoint() {
  Rng rng(kDefaultSeed + 13);
  const auto grid = default_time_grid();
  const TimeFreqPlan plan;
  double rec = 0.0, adj = 0.0, pairing = 0.0;
  const HermiteBasis b(kWindowNu, 2);
  std::vector<SampledSignal> fixtures{b.sample_psi(0, grid),
                                      b.sample_psi(1, grid) + b.sample_psi(2, grid) * Quaternion{0, 0, 1, 0}};
  for (int m = 0; m < 3; ++m)
    fixtures.push_back(random_hermite_signal(rng, 5, kWindowNu, grid));
  for (std::size_t m = 0; m < fixtures.size(); ++m) {
    const auto &f = fixtures[m];
    const auto V = qstft_grid(f, plan);
    rec = std::max(rec, max_abs_diff(qstft_reconstruct(V, grid), f));
    adj = std::max(adj, max_abs_diff(qstft_adjoint(V, grid), f * 2.0));
    const auto &h = fixtures[(m + 1) % fixtures.size()];
    const auto Vh = qstft_grid(h, plan);
    const Quaternion lhs = inner_l2(qstft_adjoint(V, grid), h);
    const Quaternion rhs = inner_tf(V, Vh);
    pairing = std::max(pairing, abs(lhs - rhs) / (std::sqrt(norm2_tf(V)) * norm_l2(h)));
  }
  return {make_check("qstft_reconstruction", "f = 2^{-1/4} int int e^{2 pi I w y} V f e^{-pi (y-x)^2}",
                     rec, 1e-5),
          make_check("qstft_adjoint_inverts", "A V f = 2 f", adj, 1e-5),
          make_check("qstft_adjoint_pairing", "<A F, h> = <F, V h> (relative)", pairing, 1e-5)};
}

inline std::vector<Check> reproducing_kernel() {
  Rng rng(kDefaultSeed + 17);
  const auto grid = default_time_grid();
  const TimeFreqPlan plan;
  const auto f = random_hermite_signal(rng, 4, kWindowNu, grid);
  const auto V = qstft_grid(f, plan);
  double repro = 0.0, diag = 0.0, sym = 0.0;
  const auto probes = default_tf_probes();
  for (const auto &p : probes) {
    repro = std::max(repro, abs(reproduce(V, p.x, p.omega, grid) -
                                qstft_windowed(f, p.x, p.omega, plan.unit)));
    diag = std::max(diag, abs(gabor_kernel(p.x, p.omega, p.x, p.omega, plan.unit, grid) -
                              Quaternion{1.0}));
  }
  for (std::size_t a = 0; a < probes.size(); ++a) {
    const auto &p = probes[a], &q = probes[(a + 4) % probes.size()];
    sym = std::max(sym, abs(gabor_kernel(p.x, p.omega, q.x, q.omega, plan.unit, grid) -
                            conj(gabor_kernel(q.x, q.omega, p.x, p.omega, plan.unit, grid))));
  }
  return {make_check("gabor_reproduction", "V f(x', w') = int int K V f", repro, 1e-4),
          make_check("gabor_kernel_diagonal", "K(w, x; w, x) = 1", diag, 1e-9),
          make_check("gabor_kernel_symmetry", "K(a; b) = conj(K(b; a))", sym, 1e-10)};
}

inline std::vector<Check> lieb_inequality() {
  Rng rng(kDefaultSeed + 19);
  const auto grid = default_time_grid();
  const TimeFreqPlan plan;
  const HermiteBasis b(kWindowNu, 3);
  std::vector<SampledSignal> fixtures{sample_window(grid)};
  for (std::size_t k = 0; k <= 3; ++k)
    fixtures.push_back(b.sample_psi(k, grid));
  for (int m = 0; m < 2; ++m)
    fixtures.push_back(random_hermite_signal(rng, 4, kWindowNu, grid));
  double excess = -INFINITY, p2 = 0.0;
  for (const auto &f : fixtures) {
    const auto V = qstft_grid(f, plan);
    const double nrm = norm_l2(f);
    for (double p : {2.0, 3.0, 4.0, 6.0}) {
      const auto r = lieb_functional(V, nrm, p);
      // Compare on the scale of the bound.
      excess = std::max(excess, (r.lhs - r.bound) / r.bound);
      if (p == 2.0)
        p2 = std::max(p2, std::fabs(r.lhs - 2.0 * nrm * nrm) / (nrm * nrm));
    }
  }
  return {make_check("lieb_inequality", "int |V f|^p <= (2^{p+1}/p) ||f||^p, (lhs - bound)/bound",
                     excess, kLiebSlack),
          make_check("lieb_p2_isometry", "p = 2 value equals 2 ||f||^2", p2, 1e-6)};
}

inline std::vector<Check> uncertainty() {
  const auto grid = default_time_grid();
  const TimeFreqPlan plan;
  const auto phi = sample_window(grid);
  const auto U = rectangle_mask(plan, -2.0, 2.0, -2.0, 2.0);
  // eps from the measured energy of the region, so the hypothesis holds by construction.
  const auto probe = concentration_check(phi, U, 1.0, 4.0, plan);
  const double eps = std::max(0.0, 1.0 - probe.energy);
  const auto r = concentration_check(phi, U, eps, 4.0, plan);
  const auto small = rectangle_mask(plan, -0.25, 0.25, -0.25, 0.25);
  const auto ps = concentration_check(phi, small, 1.0, 4.0, plan);
  const double eps_small = std::max(0.0, 1.0 - ps.energy);
  const auto rs = concentration_check(phi, small, eps_small, 4.0, plan);
  return {make_check("weak_uncertainty", "|U| >= (1 - eps)/2, residual = bound - |U|",
                     std::max(r.weak_bound - r.measure, rs.weak_bound - rs.measure), 0.0),
          make_check("sharp_uncertainty", "|U| >= c_4 (1 - eps)^2, residual = bound - |U|",
                     std::max(r.sharp_bound - r.measure, rs.sharp_bound - rs.measure), 0.0)};
}

/// Intertwining constant and the Hermite-image prefactor.
inline std::vector<Check> constants_qstft(EmpiricalConstants &ec) {
  const auto grid = default_time_grid();
  const HermiteBasis b(kWindowNu, 1);
  const auto f = b.sample_psi(1, grid) + sample_window(grid) * Quaternion{0, 0.5, -0.25, 1.0};
  ec.intertwine = fourier_intertwine_residual(f, ImaginaryUnit(0.0, 2.0, 1.0));
  ec.has_intertwine = true;
  ec.hermite_image.clear();
  double image = 0.0;
  for (std::size_t k = 0; k <= 6; ++k) {
    ec.hermite_image.push_back(hermite_image_residual(k, ImaginaryUnit::j(), default_tf_probes(), grid));
    image = std::max(image, ec.hermite_image.back().residual);
  }
  return {make_check("intertwining_constant_identified",
                     "V f(x, w) = C e^{-2 pi I w x} V(F_I f)(w, -x); min over C in {1, sqrt 2}",
                     std::min(ec.intertwine.residual_one, ec.intertwine.residual_sqrt2),
                     1e-7),
          make_check("hermite_image_closed_form",
                     "V(h_k/||h_k||^2) = e^{-I pi x w} e^{-pi|q|^2/2} 2^{3/4}/(2^k k!) conj(q)^k",
                     image, 1e-7)};
}

// ---------------------------------------------------------------- suites

struct Report {
  std::string suite;
  std::vector<Check> checks;
  EmpiricalConstants constants;

  bool pass() const { return all_pass(checks); }
};

inline bool valid_suite(const std::string &s) {
  return s == "all" || s == "qft" || s == "bargmann" || s == "qstft";
}

inline Report run_suite(const std::string &suite) {
  Report r{suite, {}, {}};
  auto add = [&](std::vector<Check> v) {
    for (auto &c : v)
      r.checks.push_back(std::move(c));
  };
  const bool all = suite == "all";
  if (all || suite == "bargmann") {
    add(hermite_orthonormality());
    add(kernel_generating_function());
    add(bargmann_unitarity());
    add(operator_equivalences());
  }
  if (all || suite == "qft") {
    add(qft_properties());
    add(qft_eigenvalues(r.constants));
  }
  if (all || suite == "qstft") {
    if (!all)
      add(qft_eigenvalues(r.constants));
    add(route_equivalence());
    add(isometry_moyal());
    add(reconstruction_adjoint());
    add(reproducing_kernel());
    add(lieb_inequality());
    add(uncertainty());
    add(constants_qstft(r.constants));
  }
  return r;
}

} // namespace qtf::verify
