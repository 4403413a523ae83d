#pragma once

// Closed forms for the weighted A15 tiling as a function of alpha, where the
// even-to-odd wall weight is mu = 2 alpha / 5. Tile 4Z^3 (V = 64) holds two
// even cells (class 1) and six odd cells (class 2).

#include <cmath>
#include <numbers>

#include "zador/merit.hpp"
#include "zador/periodic_structure.hpp"
#include "zador/weighted_voronoi.hpp"

namespace zador::a15 {

inline constexpr double kTileVolume = 64.0;
inline constexpr int kEvenCount = 2;
inline constexpr int kOddCount = 6;

struct Analytic {
  double alpha = 0.0;
  double mu = 0.0;
  double v1 = 0.0, v2 = 0.0;
  double u1 = 0.0, u2 = 0.0;
  double p1 = 0.0, p2 = 0.0;
};

inline Analytic analytic(double alpha) {
  check_a15_alpha(alpha);
  const double a3 = alpha * alpha * alpha;
  const double a4 = a3 * alpha;
  const double a5 = a4 * alpha;
  Analytic r;
  r.alpha = alpha;
  r.mu = 2.0 * alpha / 5.0;
  r.v1 = 4.0 * a3;
  r.v2 = 4.0 / 3.0 * (8.0 - a3);
  r.u1 = 71.0 / 30.0 * a5;
  r.u2 = (1200.0 - 600.0 * a3 + 360.0 * a4 - 71.0 * a5) / 90.0;
  r.p1 = a3 / 8.0;
  r.p2 = 1.0 - r.p1;
  return r;
}

/// Fixed-rate merit as the reduced quartic (10 - 5a^3 + 3a^4) / 96.
inline double g_fixed_closed(double alpha) {
  check_a15_alpha(alpha);
  const double a3 = alpha * alpha * alpha;
  return (10.0 - 5.0 * a3 + 3.0 * a3 * alpha) / 96.0;
}

/// Fixed-rate merit from the cell moments: 8^(2/3) (2U1 + 6U2) / (3 * 64^(5/3)).
inline double g_fixed_from_moments(double alpha) {
  const Analytic a = analytic(alpha);
  return std::cbrt(64.0) * (kEvenCount * a.u1 + kOddCount * a.u2) / (3.0 * std::pow(kTileVolume, 5.0 / 3.0));
}

/// Variable-rate merit (2U1 + 6U2) / (192 (V1^p1 V2^p2)^(2/3)).
inline double g_variable_closed(double alpha) {
  const Analytic a = analytic(alpha);
  const double geo = std::pow(a.v1, a.p1) * std::pow(a.v2, a.p2);
  return (kEvenCount * a.u1 + kOddCount * a.u2) / (192.0 * std::pow(geo, 2.0 / 3.0));
}

/// Covering radius of the weighted tiling, taken from the cell geometry.
inline double covering_radius(double alpha) { return covering(build_inventory(make_a15(alpha))).radius; }

/// Thickness (8/64) (4 pi / 3) R(alpha)^3.
inline double thickness_closed(double alpha) {
  check_a15_alpha(alpha);
  const double r = covering_radius(alpha);
  return 8.0 / kTileVolume * (4.0 * std::numbers::pi / 3.0) * r * r * r;
}

}  // namespace zador::a15
