#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zador/a15.hpp"
#include "zador/merit.hpp"
#include "zador/optimize.hpp"

using namespace zador;

namespace {

std::vector<double> alpha_grid() {
  std::vector<double> g;
  for (int i = 0; i < 20; ++i) g.push_back(0.2 + 1.25 * i / 19.0);
  return g;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(A15, AnalyticInvariants) {
  for (double a : alpha_grid()) {
    const auto r = a15::analytic(a);
    EXPECT_NEAR(2 * r.v1 + 6 * r.v2, 64.0, 1e-12);
    EXPECT_DOUBLE_EQ(r.p1, a * a * a / 8.0);
    EXPECT_NEAR(r.p1 + r.p2, 1.0, 1e-15);
    EXPECT_LT(r.p1, 27.0 / 64.0);
    EXPECT_DOUBLE_EQ(r.mu, 0.4 * a);
    // The probabilities are the volume shares.
    EXPECT_NEAR(r.p1, 2 * r.v1 / 64.0, 1e-15);
  }
}

TEST(A15, FixedRateClosedForm) {
  EXPECT_NEAR(a15::g_fixed_closed(1.25), 1935.0 / 24576.0, 1e-17);
  EXPECT_NEAR(a15::g_fixed_closed(1.25), 0.0787353515625, 1e-16);
  EXPECT_NEAR(a15::g_fixed_closed(1e-6), 10.0 / 96.0, 1e-12);
  // Stationary at 5/4: derivative (-15 a^2 + 12 a^3) / 96.
  const double h = 1e-5;
  EXPECT_NEAR((a15::g_fixed_closed(1.25 + h) - a15::g_fixed_closed(1.25 - h)) / (2 * h), 0.0, 1e-10);
}

TEST(A15, FixedRateTwoPaths) {
  for (double a : alpha_grid()) EXPECT_LT(rel(a15::g_fixed_from_moments(a), a15::g_fixed_closed(a)), 1e-12) << a;
}

TEST(A15, VariableRateClosedForm) {
  // Reference values from a 30-digit evaluation of the same expression.
  EXPECT_NEAR(a15::g_variable_closed(1.0), 0.0806960529841258, 1e-15);
  EXPECT_NEAR(a15::g_variable_closed(1.25), 0.0787305207100723, 1e-15);
  EXPECT_NEAR(a15::g_variable_closed(1.24007574221986), 0.0787257402336649, 1e-15);
}

TEST(A15, VariableRateMinimum) {
  const auto r = minimize_scalar(a15::g_variable_closed, 0.5, 1.45);
  EXPECT_NEAR(r.argmin, 1.2401, 5e-4);
  EXPECT_NEAR(r.argmin, 1.24007574221986, 1e-7);
  EXPECT_NEAR(r.min_value, 0.0787257402336649, 1e-14);
}

TEST(A15, VariableNeverAboveFixed) {
  for (double a = 0.05; a < 1.5; a += 0.01) EXPECT_LE(a15::g_variable_closed(a), a15::g_fixed_closed(a) + 1e-16) << a;
  // Equal cell volumes at a^3 = 2.
  const double eq = std::cbrt(2.0);
  const auto r = a15::analytic(eq);
  EXPECT_NEAR(r.v1, r.v2, 1e-13);
  EXPECT_NEAR(a15::g_variable_closed(eq), a15::g_fixed_closed(eq), 1e-15);
  EXPECT_LT(a15::g_variable_closed(1.0), a15::g_fixed_closed(1.0) - 1e-4);
}

TEST(A15, GeometryMatchesClosedForms) {
  for (double a : alpha_grid()) {
    const auto inv = build_inventory(make_a15(a));
    EXPECT_LT(rel(g_fixed(inv), a15::g_fixed_closed(a)), 1e-10) << a;
    EXPECT_LT(rel(g_variable(inv), a15::g_variable_closed(a)), 1e-10) << a;
  }
}

TEST(A15, CoveringAtFiveQuarters) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(a15::covering_radius(1.25), 5.0 * std::sqrt(3.0) / 6.0, 1e-12);
  EXPECT_NEAR(a15::thickness_closed(1.25), 125.0 * std::sqrt(3.0) * pi / 432.0, 1e-12);
  EXPECT_NEAR(a15::thickness_closed(1.25), 1.57447861478665, 1e-13);
  const auto summary = summarize(build_inventory(make_a15(1.25)));
  EXPECT_NEAR(summary.covering.thickness, a15::thickness_closed(1.25), 1e-14);
}

TEST(A15, ThicknessMinimizedAtFiveQuarters) {
  const auto r = minimize_scalar(a15::thickness_closed, 1.0, 1.45, {1e-7, 200});
  EXPECT_NEAR(r.argmin, 1.25, 1e-4);
  EXPECT_GT(a15::thickness_closed(1.2), r.min_value);
  EXPECT_GT(a15::thickness_closed(1.3), r.min_value);
}

TEST(A15, AlphaOutOfRange) {
  for (double bad : {0.0, 1.5, -1.0, 3.0}) {
    for (auto f : {a15::g_fixed_closed, a15::g_variable_closed, a15::thickness_closed}) {
      try {
        f(bad);
        ADD_FAILURE() << bad;
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::AlphaOutOfRange);
      }
    }
  }
}
