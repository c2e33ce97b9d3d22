#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "bgcs/errors.hpp"
#include "bgcs/numerics.hpp"
#include "bgcs/physics.hpp"

using namespace bgcs;

namespace {

std::vector<double> sample(const GridSpec& g, double (*fn)(double)) {
  std::vector<double> y;
  for (double x : g.samples()) y.push_back(fn(x));
  return y;
}

double gaussian(double x) { return std::exp(-x * x); }

}  // namespace

TEST(Grid, ValidatesShape) {
  EXPECT_THROW((GridSpec{1.0, 0.0, 100}).validate(), ValidationError);
  EXPECT_THROW((GridSpec{0.0, 1.0, 15}).validate(), ValidationError);
  EXPECT_THROW((GridSpec{0.0, INFINITY, 100}).validate(), ValidationError);
  const GridSpec g{0.0, 1.0, 101};
  EXPECT_NO_THROW(g.validate());
  EXPECT_DOUBLE_EQ(g.spacing(), 0.01);
  const auto xs = g.samples();
  EXPECT_EQ(xs.front(), 0.0);
  EXPECT_EQ(xs.back(), 1.0);
}

TEST(Quadrature, ConstantOnUnitInterval) {
  const GridSpec g{0.0, 1.0, 101};
  const std::vector<double> ones(101, 1.0);
  EXPECT_NEAR(quadrature(ones, g), 1.0, 1e-12);
  EXPECT_NEAR(quadrature(ones, g, QuadratureRule::simpson), 1.0, 1e-12);
}

TEST(Quadrature, GroundStateNormalized) {
  const PhysicalParams p;
  const double sigma = 1.0 / std::sqrt(p.omega() / 2.0);
  const GridSpec g{p.center() - 8 * sigma, p.center() + 8 * sigma, 801};
  std::vector<double> y;
  for (double x : g.samples()) y.push_back(std::pow(hermite_psi(0, x, p), 2));
  EXPECT_NEAR(quadrature(y, g), 1.0, 1e-8);
}

TEST(Quadrature, HermiteFunctionsOrthogonal) {
  const PhysicalParams p;
  const double sigma = 1.0 / std::sqrt(p.omega() / 2.0);
  const GridSpec g{p.center() - 10 * sigma, p.center() + 10 * sigma, 1001};
  std::vector<double> y;
  for (double x : g.samples()) y.push_back(hermite_psi(5, x, p) * hermite_psi(7, x, p));
  EXPECT_NEAR(quadrature(y, g), 0.0, 1e-8);
  EXPECT_NEAR(quadrature(y, g, QuadratureRule::simpson), 0.0, 1e-8);
}

TEST(Quadrature, RejectsMismatchedLengths) {
  const GridSpec g{0.0, 1.0, 101};
  const std::vector<double> y(100, 1.0);
  EXPECT_THROW(quadrature(y, g), ValidationError);
  const std::vector<double> x(5, 0.0);
  EXPECT_THROW(trapezoid(x, y), ValidationError);
}

// Integrand with non-vanishing end derivatives so the trapezoid error is O(h^2).
TEST(Quadrature, ObservedOrder) {
  const auto integrand = [](double x) { return std::exp(x); };
  const double exact = std::exp(1.0) - 1.0;
  double prev_trap = 0.0, prev_simp = 0.0;
  for (std::size_t n : {17u, 33u, 65u, 129u}) {
    const GridSpec g{0.0, 1.0, n};
    std::vector<double> y;
    for (double x : g.samples()) y.push_back(integrand(x));
    const double et = std::abs(quadrature(y, g) - exact);
    const double es = std::abs(quadrature(y, g, QuadratureRule::simpson) - exact);
    if (prev_trap > 0.0) {
      EXPECT_GE(std::log2(prev_trap / et), 1.9);
      EXPECT_GE(std::log2(prev_simp / es), 3.8);
    }
    prev_trap = et;
    prev_simp = es;
  }
}

TEST(Quadrature, SimpsonEvenCount) {
  const GridSpec g{0.0, 2.0, 100};
  std::vector<double> y;
  for (double x : g.samples()) y.push_back(x * x * x);
  EXPECT_NEAR(quadrature(y, g, QuadratureRule::simpson), 4.0, 1e-12);
}

TEST(GaussHermite, IntegratesEvenMoments) {
  const auto rule = gauss_hermite(30);
  for (int k = 0; k <= 20; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 2 * k);
    const double exact = std::tgamma(k + 0.5);
    EXPECT_NEAR(s / exact, 1.0, 1e-12) << "k=" << k;
  }
  const GridSpec g{-8.0, 8.0, 1601};
  EXPECT_NEAR(quadrature(sample(g, gaussian), g), std::sqrt(std::numbers::pi), 1e-12);
}

TEST(GaussHermite, ScaledWeightsConsistent) {
  const auto rule = gauss_hermite(40);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    EXPECT_NEAR(rule.weights[i] * std::exp(rule.nodes[i] * rule.nodes[i]) / rule.scaled_weights[i], 1.0, 1e-12);
  }
  EXPECT_THROW(gauss_hermite(0), ValidationError);
}

TEST(FiniteDifference, Examples) {
  EXPECT_NEAR(finite_difference([](double x) { return x * x; }, 3.0, 1e-5), 6.0, 1e-8);
  const PhysicalParams p;
  const auto psi0 = [&](double x) { return hermite_psi(0, x, p); };
  EXPECT_NEAR(finite_difference(psi0, p.center(), 1e-5), 0.0, 1e-8);
  EXPECT_THROW(finite_difference(psi0, 0.0, 0.0), ValidationError);
}

TEST(SeriesTruncation, GeometricSeries) {
  const auto trunc = truncate_series([](std::size_t n) { return std::pow(0.5, static_cast<double>(n)); }, 1e-6, 200);
  ASSERT_TRUE(trunc.converged);
  EXPECT_LE(trunc.tail_bound, 1e-12);
  // exact relative tail of a geometric series
  const double M = static_cast<double>(trunc.achieved_M);
  const double exact = std::pow(0.5, M + 1) / (1.0 - std::pow(0.5, M + 1));
  EXPECT_LE(exact, trunc.tail_bound * (1.0 + 1e-9));
}

TEST(SeriesTruncation, ReportsFailureAtCap) {
  const auto trunc = truncate_series([](std::size_t) { return 1.0; }, 1e-6, 50);
  EXPECT_FALSE(trunc.converged);
  EXPECT_EQ(trunc.achieved_M, 50u);
  EXPECT_TRUE(std::isinf(trunc.tail_bound));
}

TEST(SeriesTruncation, TailBoundMonotoneInCap) {
  // Poisson-like weights: converge only once past the peak.
  const auto term = [](std::size_t n) {
    const double dn = static_cast<double>(n);
    return std::exp(dn * std::log(9.0) - std::lgamma(dn + 1.0));
  };
  double prev = INFINITY;
  for (std::size_t cap = 5; cap <= 80; cap += 5) {
    const auto t = truncate_series(term, 1e-12, cap);
    EXPECT_LE(t.tail_bound, prev);
    prev = t.tail_bound;
  }
  EXPECT_TRUE(std::isfinite(prev));
}
