// qtf: command-line front end for the quaternion STFT library.
//
// Exit codes: 0 success, 1 verification failure, 2 malformed input, 3 I/O error,
// 4 invalid configuration, 5 any other library error.

#include <qtf/bargmann.hpp>
#include <qtf/basis.hpp>
#include <qtf/error.hpp>
#include <qtf/io.hpp>
#include <qtf/qft.hpp>
#include <qtf/quadrature.hpp>
#include <qtf/report.hpp>
#include <qtf/stft.hpp>
#include <qtf/verify.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kParse = 2, kIo = 3, kConfig = 4, kInternal = 5 };

qtf::ImaginaryUnit parse_unit(const std::string &s) {
  if (s == "i")
    return qtf::ImaginaryUnit::i();
  if (s == "j")
    return qtf::ImaginaryUnit::j();
  if (s == "k")
    return qtf::ImaginaryUnit::k();
  std::vector<double> v;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size())
        throw std::invalid_argument(part);
    } catch (const std::exception &) {
      throw qtf::ConfigError("--unit expects i, j, k or x,y,z; got '" + s + "'");
    }
  }
  if (v.size() != 3)
    throw qtf::ConfigError("--unit expects i, j, k or x,y,z; got '" + s + "'");
  try {
    return {v[0], v[1], v[2]};
  } catch (const qtf::BadImaginaryUnit &e) {
    throw qtf::ConfigError(std::string("--unit: ") + e.what());
  }
}

qtf::LineGrid axis(double lo, double hi, std::size_t n, const char *name) {
  try {
    return qtf::make_grid(lo, hi, n);
  } catch (const qtf::BadGridSpec &e) {
    throw qtf::ConfigError(std::string(name) + ": " + e.what());
  }
}

void require_positive(double v, const char *name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw qtf::ConfigError(std::string(name) + " must be a positive finite number");
}

struct AxisFlags {
  double lo, hi;
  std::size_t n;
};

void add_axis(CLI::App *cmd, AxisFlags &a, const std::string &prefix, const std::string &what) {
  cmd->add_option("--" + prefix + "min", a.lo, what + " lower bound")->capture_default_str();
  cmd->add_option("--" + prefix + "max", a.hi, what + " upper bound")->capture_default_str();
  cmd->add_option("--n" + prefix, a.n, what + " node count")->capture_default_str();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Quaternion short-time Fourier transform toolkit"};
  app.require_subcommand(1);

  std::string in, out, unit_s = "i", route = "windowed", suite = "all", report;

  auto *analyze = app.add_subcommand("analyze", "QSTFT of a signal CSV on an (x, w) lattice");
  AxisFlags ax{-4.0, 4.0, 129}, aw{-4.0, 4.0, 129};
  analyze->add_option("--in", in, "input signal CSV (t,w,x,y,z)")->required();
  analyze->add_option("--out", out, "output grid CSV")->required();
  add_axis(analyze, ax, "x", "time shift axis");
  add_axis(analyze, aw, "w", "frequency axis");
  analyze->add_option("--unit", unit_s, "imaginary unit: i, j, k or x,y,z")->capture_default_str();
  analyze->add_option("--route", route, "evaluation route")
      ->check(CLI::IsMember({"windowed", "bargmann"}))
      ->capture_default_str();

  auto *reconstruct = app.add_subcommand("reconstruct", "invert a QSTFT grid CSV");
  AxisFlags at{-8.0, 8.0, 1024};
  reconstruct->add_option("--in", in, "input grid CSV")->required();
  reconstruct->add_option("--out", out, "output signal CSV")->required();
  reconstruct->add_option("--unit", unit_s, "imaginary unit used by analyze")->capture_default_str();
  add_axis(reconstruct, at, "t", "output time axis");

  auto *qft = app.add_subcommand("qft", "left-sided quaternion Fourier transform");
  AxisFlags aq{-8.0, 8.0, 1024};
  bool inverse = false;
  qft->add_option("--in", in, "input signal CSV")->required();
  qft->add_option("--out", out, "output CSV (same format, first column is the new variable)")
      ->required();
  qft->add_option("--unit", unit_s, "imaginary unit: i, j, k or x,y,z")->capture_default_str();
  qft->add_flag("--inverse", inverse, "apply the inverse transform");
  qft->add_option("--min", aq.lo, "output axis lower bound")->capture_default_str();
  qft->add_option("--max", aq.hi, "output axis upper bound")->capture_default_str();
  qft->add_option("--n", aq.n, "output axis node count")->capture_default_str();

  auto *bargmann = app.add_subcommand("bargmann", "Segal-Bargmann power-series coefficients");
  double nu = 2.0 * std::numbers::pi;
  std::size_t kmax = qtf::kDefaultKmax;
  bargmann->add_option("--in", in, "input signal CSV")->required();
  bargmann->add_option("--out", out, "output coefficient CSV (k,cw,cx,cy,cz)")->required();
  bargmann->add_option("--nu", nu, "Gaussian parameter nu")->capture_default_str();
  bargmann->add_option("--kmax", kmax, "highest coefficient index")->capture_default_str();

  auto *hermite = app.add_subcommand("hermite", "sample a normalized Hermite function");
  std::size_t hk = 0;
  AxisFlags ah{-8.0, 8.0, 1024};
  hermite->add_option("--k", hk, "index k")->required();
  hermite->add_option("--nu", nu, "Gaussian parameter nu")->capture_default_str();
  add_axis(hermite, ah, "t", "time axis");
  hermite->add_option("--out", out, "output CSV (t,value); stdout when omitted");

  auto *verify = app.add_subcommand("verify", "run the identity checks");
  verify->add_option("--suite", suite, "check group")
      ->check(CLI::IsMember({"all", "qft", "bargmann", "qstft"}))
      ->capture_default_str();
  verify->add_option("--report", report, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (analyze->parsed()) {
      const qtf::TimeFreqPlan plan{axis(ax.lo, ax.hi, ax.n, "x axis"),
                                   axis(aw.lo, aw.hi, aw.n, "w axis"), parse_unit(unit_s),
                                   route == "bargmann" ? qtf::StftRoute::bargmann
                                                       : qtf::StftRoute::windowed};
      const auto f = qtf::io::read_signal_csv(in);
      qtf::io::write_grid_csv(out, qtf::qstft_grid(f, plan));
    } else if (reconstruct->parsed()) {
      const auto unit = parse_unit(unit_s);
      const auto tgrid = axis(at.lo, at.hi, at.n, "t axis");
      const auto V = qtf::io::read_grid_csv(in, unit);
      qtf::io::write_signal_csv(out, qtf::qstft_reconstruct(V, tgrid));
    } else if (qft->parsed()) {
      const auto unit = parse_unit(unit_s);
      const auto target = axis(aq.lo, aq.hi, aq.n, "output axis");
      const auto f = qtf::io::read_signal_csv(in);
      const auto result = inverse ? qtf::qft_inverse(f, {unit, target, f.grid})
                                  : qtf::qft_forward(f, {unit, f.grid, target});
      qtf::io::write_signal_csv(out, result);
    } else if (bargmann->parsed()) {
      require_positive(nu, "--nu");
      const auto f = qtf::io::read_signal_csv(in);
      const double edge = std::max(abs(f.values.front()), abs(f.values.back()));
      if (edge > qtf::kTruncationThreshold)
        std::fprintf(stderr, "warning: signal is %.3e at the grid edge; coefficients may be "
                             "truncation-limited\n", edge);
      qtf::io::write_atomic(out, qtf::io::coefficients_to_csv(qtf::bargmann_coefficients(f, nu, kmax)));
    } else if (hermite->parsed()) {
      require_positive(nu, "--nu");
      const auto grid = axis(ah.lo, ah.hi, ah.n, "t axis");
      const qtf::HermiteBasis basis(nu, hk);
      const auto csv = qtf::io::hermite_to_csv(basis.sample_psi(hk, grid));
      if (out.empty())
        std::cout << csv;
      else
        qtf::io::write_atomic(out, csv);
    } else if (verify->parsed()) {
      const auto r = qtf::verify::run_suite(suite);
      qtf::verify::print_table(r, stderr);
      const auto json = qtf::verify::to_json_string(r);
      if (report.empty())
        std::cout << json;
      else
        qtf::io::write_atomic(report, json);
      return r.pass() ? kOk : kVerifyFailed;
    }
  } catch (const qtf::ParseError &e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kParse;
  } catch (const qtf::IoError &e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const qtf::ConfigError &e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfig;
  } catch (const qtf::Error &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
  return kOk;
}
