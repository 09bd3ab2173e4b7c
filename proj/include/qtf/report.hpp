#pragma once

// JSON and plain-text rendering of a verification report.

#include <qtf/verify.hpp>

#include <json.hpp>

#include <cstdio>
#include <string>

namespace qtf::verify {

inline nlohmann::ordered_json to_json(const Report &r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["suite"] = r.suite;
  j["pass"] = r.pass();
  ordered_json checks = ordered_json::array();
  for (const auto &c : r.checks)
    checks.push_back({{"name", c.name},
                      {"paper_ref", c.identity},
                      {"residual", c.residual},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  j["checks"] = std::move(checks);

  const auto &ec = r.constants;
  ordered_json constants = ordered_json::object();
  if (ec.has_intertwine) {
    constants["ps1_C"] = ec.intertwine.empirical_constant;
    constants["ps1_fitted_C"] = ec.intertwine.fitted_constant;
    constants["ps1_residual_C_1"] = ec.intertwine.residual_one;
    constants["ps1_residual_C_sqrt2"] = ec.intertwine.residual_sqrt2;
    constants["ps1_constant_sqrt2"] =
        ec.intertwine.residual_sqrt2 < ec.intertwine.residual_one ? "confirmed" : "refuted";
  }
  if (!ec.eigen.empty()) {
    ordered_json lam = ordered_json::array();
    for (const auto &e : ec.eigen)
      lam.push_back({{"k", e.k},
                     {"re", e.lambda.w},
                     {"im", ec.eigen_unit.project(e.lambda)},
                     {"modulus", abs(e.lambda)},
                     {"residual", e.residual}});
    constants["eigenvalue_lambda"] = std::move(lam);
    constants["eigenvalue_unit"] = {ec.eigen_unit.ux(), ec.eigen_unit.uy(), ec.eigen_unit.uz()};
    constants["eigenvalue_residual_unimodular_candidate"] = ec.eigen_residual_unit;
    constants["eigenvalue_residual_half_sqrt2_candidate"] = ec.eigen_residual_half;
    constants["eigenvalue_factor_2^-1/2"] =
        ec.eigen_residual_half < ec.eigen_residual_unit ? "confirmed" : "refuted";
  }
  if (!ec.hermite_image.empty()) {
    ordered_json img = ordered_json::array();
    for (const auto &h : ec.hermite_image)
      img.push_back({{"k", h.k}, {"relative_residual", h.residual}, {"fitted_ratio", h.fitted_ratio}});
    constants["hermite_image_prefactor"] = std::move(img);
  }
  j["empirical_constants"] = std::move(constants);
  return j;
}

inline std::string to_json_string(const Report &r) { return to_json(r).dump(2) + "\n"; }

/// Human-readable residual table.
inline void print_table(const Report &r, std::FILE *out) {
  std::fprintf(out, "%-36s %12s %10s  %s\n", "check", "residual", "tolerance", "status");
  for (const auto &c : r.checks)
    std::fprintf(out, "%-36s %12.3e %10.1e  %s\n", c.name.c_str(), c.residual, c.tolerance,
                 c.pass ? "pass" : "FAIL");
  const auto failed = std::count_if(r.checks.begin(), r.checks.end(),
                                    [](const Check &c) { return !c.pass; });
  std::fprintf(out, "suite %s: %zu checks, %zu failed\n", r.suite.c_str(), r.checks.size(),
               static_cast<std::size_t>(failed));
}

} // namespace qtf::verify
