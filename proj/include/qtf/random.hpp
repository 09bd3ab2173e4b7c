#pragma once

// Seeded generators for quaternions, units and Hermite-combination signals, shared by
// the verification suite and the property tests.

#include <qtf/basis.hpp>
#include <qtf/quadrature.hpp>
#include <qtf/quaternion.hpp>

#include <random>
#include <vector>

namespace qtf {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

// uniform_real_distribution is implementation-defined; this is not.
inline double uniform(Rng &rng, double lo = -1.0, double hi = 1.0) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline Quaternion random_quaternion(Rng &rng, double scale = 1.0) {
  return {scale * uniform(rng), scale * uniform(rng), scale * uniform(rng), scale * uniform(rng)};
}

inline ImaginaryUnit random_unit(Rng &rng) {
  for (;;) {
    const double x = uniform(rng), y = uniform(rng), z = uniform(rng);
    const double r2 = x * x + y * y + z * z;
    if (r2 > 1e-4 && r2 <= 1.0)
      return {x, y, z};
  }
}

/// Random right coefficients a_0..a_kmax with all four components populated.
inline std::vector<Quaternion> random_hermite_coefficients(Rng &rng, std::size_t kmax) {
  std::vector<Quaternion> a(kmax + 1);
  for (auto &c : a)
    c = random_quaternion(rng);
  return a;
}

inline SampledSignal random_hermite_signal(Rng &rng, std::size_t kmax, double nu,
                                           const LineGrid &grid) {
  return hermite_combination(random_hermite_coefficients(rng, kmax), nu, grid);
}

} // namespace qtf
