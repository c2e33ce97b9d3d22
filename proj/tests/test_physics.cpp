#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bgcs/errors.hpp"
#include "bgcs/ladder_function.hpp"
#include "bgcs/numerics.hpp"
#include "bgcs/physics.hpp"

using namespace bgcs;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

// Physicists' Hermite polynomial with explicit normalization, 50 digits.
double reference_phi(int n, double xi_in) {
  const big xi = xi_in;
  big h0 = 1, h1 = 2 * xi;
  if (n == 0) {
    h1 = h0;
  } else {
    for (int m = 1; m < n; ++m) {
      const big h2 = 2 * xi * h1 - 2 * m * h0;
      h0 = h1;
      h1 = h2;
    }
  }
  big norm = boost::multiprecision::sqrt(boost::multiprecision::sqrt(big(std::numbers::pi)));
  for (int m = 1; m <= n; ++m) norm *= boost::multiprecision::sqrt(big(2 * m));
  return static_cast<double>(h1 * boost::multiprecision::exp(-xi * xi / 2) / norm);
}

SpinorWavefunction random_state(std::mt19937_64& rng, std::size_t size, std::size_t support, System system) {
  std::normal_distribution<double> gauss;
  auto s = zero_spinor(size, system, PhysicalParams{});
  for (std::size_t m = 0; m < support; ++m) {
    s.upper[m] = {gauss(rng), gauss(rng)};
    s.lower[m] = {gauss(rng), gauss(rng)};
  }
  return s;
}

double distance(const SpinorWavefunction& a, const SpinorWavefunction& b) {
  double sum = 0.0;
  for (std::size_t m = 0; m < std::max(a.size(), b.size()); ++m) {
    const cplx au = m < a.size() ? a.upper[m] : cplx{}, al = m < a.size() ? a.lower[m] : cplx{};
    const cplx bu = m < b.size() ? b.upper[m] : cplx{}, bl = m < b.size() ? b.lower[m] : cplx{};
    sum += std::norm(au - bu) + std::norm(al - bl);
  }
  return std::sqrt(sum);
}

}  // namespace

TEST(Params, DefaultsAndDerivedMass) {
  const PhysicalParams p;
  EXPECT_EQ(p.hbar(), 1.0);
  EXPECT_EQ(p.omega(), 1.0);
  EXPECT_EQ(p.omega_c_star(), 1.0);
  EXPECT_EQ(p.m_star(), 0.5);
  EXPECT_EQ(p.center(), -2.0);
  const auto q = PhysicalParams::from_mass(1.0, 2.0, 0.5, 0.0);
  EXPECT_DOUBLE_EQ(q.omega(), 2.0);
  const auto b = p.with_field(0.25);
  EXPECT_EQ(b.m_star(), p.m_star());
  EXPECT_DOUBLE_EQ(b.omega(), 0.25);
}

TEST(Params, RejectsNonPhysical) {
  EXPECT_THROW(PhysicalParams::from_oscillator(1.0, 0.0, 1.0, 1.0), ValidationError);
  EXPECT_THROW(PhysicalParams::from_oscillator(-1.0, 1.0, 1.0, 1.0), ValidationError);
  EXPECT_THROW(PhysicalParams::from_oscillator(1.0, 1.0, NAN, 1.0), ValidationError);
  EXPECT_THROW(PhysicalParams::from_oscillator(1.0, 1.0, 1.0, INFINITY), ValidationError);
  EXPECT_THROW(PhysicalParams::from_mass(1.0, 0.0, 1.0, 1.0), ValidationError);
}

TEST(Hermite, MatchesHighPrecisionReference) {
  std::vector<double> phi(61);
  for (double xi : {-7.5, -3.2, -0.4, 0.0, 1.1, 4.7, 9.9}) {
    hermite_functions_xi(xi, phi);
    for (int n : {0, 1, 2, 7, 30, 59, 60}) {
      const double ref = reference_phi(n, xi);
      EXPECT_NEAR(phi[static_cast<std::size_t>(n)], ref, 1e-13 + 1e-11 * std::abs(ref)) << "n=" << n << " xi=" << xi;
    }
  }
}

TEST(Hermite, NoOverflowFarOut) {
  std::vector<double> phi(400);
  hermite_functions_xi(35.0, phi);
  for (double v : phi) EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(phi[399], 0.0);
  EXPECT_THROW(hermite_functions_xi(NAN, phi), ValidationError);
}

TEST(Hermite, PhysicalScaling) {
  const auto p = PhysicalParams::from_oscillator(1.0, 1.0, 2.5, 0.7);
  const double x = 0.3;
  const double xi = std::sqrt(p.omega() / 2.0) * (x + 2.0 * p.k() / p.omega());
  EXPECT_NEAR(hermite_psi(4, x, p), std::pow(p.omega() / 2.0, 0.25) * reference_phi(4, xi), 1e-14);
}

TEST(Hermite, DerivativeMatchesFiniteDifference) {
  for (const auto& p : {PhysicalParams{}, PhysicalParams::from_oscillator(1.0, 2.0, 3.0, -0.5)}) {
    for (int n : {0, 1, 3, 10, 25}) {
      for (double x : {-4.0, -2.0, -0.3, 1.5}) {
        const auto fn = [&](double y) { return hermite_psi(n, y, p); };
        EXPECT_NEAR(hermite_psi_derivative(n, x, p), finite_difference(fn, x, 1e-5), 1e-6) << n << " " << x;
      }
    }
  }
}

TEST(Spectrum, BilayerAndMonolayerLevels) {
  const PhysicalParams p;
  EXPECT_EQ(bilayer_energy(0, Branch::positive, p), 0.0);
  EXPECT_EQ(bilayer_energy(1, Branch::negative, p), 0.0);
  EXPECT_EQ(bilayer_energy(2, Branch::positive, p), std::sqrt(2.0));
  EXPECT_EQ(bilayer_energy(3, Branch::positive, p), std::sqrt(6.0));
  EXPECT_EQ(bilayer_energy(3, Branch::negative, p), -std::sqrt(6.0));
  const double expect[] = {0.0, 1.0, std::sqrt(2.0), std::sqrt(3.0), 2.0};
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(monolayer_energy(n, Branch::positive, p), expect[n]);
  EXPECT_THROW(bilayer_energy(-1, Branch::positive, p), ValidationError);
  EXPECT_DOUBLE_EQ(bilayer_energy(5, Branch::positive, p.with_field(0.25)), 0.25 * std::sqrt(20.0));
}

TEST(Spectrum, BilayerGapsApproachCyclotronQuantum) {
  const PhysicalParams p;
  for (int n = 50; n < 2000; ++n) {
    const double gap = bilayer_energy(n + 1, Branch::positive, p) - bilayer_energy(n, Branch::positive, p);
    EXPECT_LT(std::abs(gap - 1.0), 0.01);
  }
}

TEST(Spectrum, MonolayerGapsStrictlyDecrease) {
  const PhysicalParams p;
  double prev = INFINITY;
  for (int n = 0; n < 2000; ++n) {
    const double gap = monolayer_energy(n + 1, Branch::positive, p) - monolayer_energy(n, Branch::positive, p);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
}

TEST(Eigenstates, OrthonormalInPositionSpace) {
  // Gauss-Hermite in xi with enough nodes to be exact for products up to n = 40.
  const auto rule = gauss_hermite(64);
  std::vector<std::vector<double>> phi(rule.nodes.size(), std::vector<double>(41));
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) hermite_functions_xi(rule.nodes[i], phi[i]);
  for (int n = 0; n <= 40; ++n) {
    for (int m = 0; m <= 40; ++m) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        s += rule.scaled_weights[i] * phi[i][static_cast<std::size_t>(n)] * phi[i][static_cast<std::size_t>(m)];
      }
      EXPECT_NEAR(s, n == m ? 1.0 : 0.0, 1e-8) << n << "," << m;
    }
  }
}

TEST(Eigenstates, OrthonormalSpinors) {
  const PhysicalParams p;
  for (auto system : {System::bilayer, System::monolayer}) {
    for (int n = 0; n <= 40; ++n) {
      for (int m = 0; m <= 40; ++m) {
        for (auto bn : {Branch::positive, Branch::negative}) {
          for (auto bm : {Branch::positive, Branch::negative}) {
            const auto a = build_eigenstate({n, bn}, 42, p, system);
            const auto b = build_eigenstate({m, bm}, 42, p, system);
            const bool single = n < component_offset(system);
            const bool same = n == m && (bn == bm || single);
            EXPECT_NEAR(std::abs(inner_product(a, b)), same ? 1.0 : 0.0, 1e-12);
          }
        }
      }
    }
  }
}

TEST(Eigenstates, HamiltonianResidual) {
  const auto p = PhysicalParams::from_oscillator(1.0, 1.7, 1.0, 1.0, 0.6);
  for (auto system : {System::bilayer, System::monolayer}) {
    for (int n = 0; n <= 40; ++n) {
      for (auto branch : {Branch::positive, Branch::negative}) {
        const auto s = build_eigenstate({n, branch}, 40, p, system);
        const auto h = apply_hamiltonian(s);
        ASSERT_EQ(h.size(), s.size() + 2);
        auto expected = s;
        const double e = level_energy(system, n, branch, p);
        for (auto& c : expected.upper) c *= e;
        for (auto& c : expected.lower) c *= e;
        EXPECT_LT(distance(h, expected), 1e-10) << "n=" << n;
      }
    }
  }
}

TEST(Eigenstates, ComponentLayout) {
  const PhysicalParams p;
  const auto s0 = build_eigenstate({1, Branch::positive}, 5, p, System::bilayer);
  EXPECT_EQ(s0.lower[1], cplx(1.0));
  EXPECT_EQ(s0.upper[0], cplx(0.0));
  const auto s3 = build_eigenstate({3, Branch::negative}, 5, p, System::bilayer);
  EXPECT_NEAR(s3.upper[1].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(s3.lower[3].real(), -std::sqrt(0.5), 1e-15);
  EXPECT_THROW(build_eigenstate({6, Branch::positive}, 5, p, System::bilayer), NumericalError);
}

TEST(Ladder, AdjointOnRandomStates) {
  std::mt19937_64 rng(20261016);
  const LadderFunction fs[] = {LadderFunction::unit(), LadderFunction::shift1(), LadderFunction::shift2(),
                               LadderFunction::custom("exp", [](int n) { return std::exp(-0.1 * n); })};
  for (auto system : {System::bilayer, System::monolayer}) {
    for (const auto& f : fs) {
      for (int trial = 0; trial < 25; ++trial) {
        // support leaves one guard slot so neither image is clipped
        const auto phi = random_state(rng, 30, 29, system);
        const auto chi = random_state(rng, 30, 29, system);
        const cplx lhs = inner_product(apply_ladder_up(phi, f), chi);
        const cplx rhs = inner_product(phi, apply_ladder_down(chi, f));
        EXPECT_LT(std::abs(lhs - rhs), 1e-10 * (1.0 + std::abs(lhs)));
      }
    }
  }
}

TEST(Ladder, EigenstatesMapToNeighbours) {
  const PhysicalParams p;
  for (auto system : {System::bilayer, System::monolayer}) {
    for (const auto& f : {LadderFunction::unit(), LadderFunction::shift1(), LadderFunction::shift2()}) {
      for (int n = 1; n <= 30; ++n) {
        const auto down = apply_ladder_down(build_eigenstate({n, Branch::positive}, 33, p, system), f);
        auto expected = build_eigenstate({n - 1, Branch::positive}, 33, p, system);
        const double c = ladder_eigen_coefficient(n, f, system);
        for (auto& v : expected.upper) v *= c;
        for (auto& v : expected.lower) v *= c;
        EXPECT_LT(distance(down, expected), 1e-12) << n;
      }
    }
  }
}

TEST(Ladder, DownAfterUpProportional) {
  const PhysicalParams p;
  const auto f = LadderFunction::unit();
  for (auto system : {System::bilayer, System::monolayer}) {
    for (int n : {0, 2, 3, 7, 20}) {
      const auto s = build_eigenstate({n, Branch::positive}, 25, p, system);
      const auto back = apply_ladder_down(apply_ladder_up(s, f), f);
      const cplx lambda = inner_product(s, back);
      auto scaled = s;
      for (auto& v : scaled.upper) v *= lambda;
      for (auto& v : scaled.lower) v *= lambda;
      EXPECT_LT(distance(back, scaled), 1e-12) << n;
      EXPECT_GT(std::abs(lambda), 0.0);
    }
  }
}

TEST(Ladder, GeneralizedFactorialRecursion) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> q(31);
    for (auto& v : q) v = u(rng);
    const auto fn = [&](int j) { return q[static_cast<std::size_t>(j)]; };
    EXPECT_EQ(generalized_factorial(fn, 0), 1.0);
    for (int s = 1; s <= 30; ++s) {
      EXPECT_NEAR(generalized_factorial(fn, s), fn(s) * generalized_factorial(fn, s - 1),
                  1e-13 * generalized_factorial(fn, s));
    }
  }
  EXPECT_THROW(generalized_factorial([](int) { return 1.0; }, -1), ValidationError);
}

TEST(Ladder, NamedFunctions) {
  EXPECT_EQ(LadderFunction::from_name("shift2")(4), 2.0 * std::sqrt(0.75));
  EXPECT_EQ(LadderFunction::shift1()(1), 0.0);
  EXPECT_EQ(LadderFunction::shift2()(2), 0.0);
  EXPECT_THROW(LadderFunction::from_name("cubic"), ValidationError);
}
