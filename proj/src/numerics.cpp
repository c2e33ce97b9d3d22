#include "bgcs/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "bgcs/errors.hpp"

namespace bgcs {

void GridSpec::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw ValidationError("grid bounds must be finite");
  }
  if (!(x_min < x_max)) {
    throw ValidationError("grid requires x_min < x_max");
  }
  if (points < kMinPoints) {
    throw ValidationError("grid requires at least " + std::to_string(kMinPoints) + " points");
  }
}

double GridSpec::at(std::size_t i) const {
  // Evaluate from the nearer endpoint so x_max is hit exactly.
  if (i + 1 == points) return x_max;
  return x_min + static_cast<double>(i) * spacing();
}

std::vector<double> GridSpec::samples() const {
  std::vector<double> xs(points);
  for (std::size_t i = 0; i < points; ++i) xs[i] = at(i);
  return xs;
}

namespace {

double simpson_odd(std::span<const double> y, double h) {
  // y.size() is odd and >= 3
  double sum = y.front() + y.back();
  for (std::size_t i = 1; i + 1 < y.size(); ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  return sum * h / 3.0;
}

}  // namespace

double quadrature(std::span<const double> samples, const GridSpec& grid, QuadratureRule rule) {
  grid.validate();
  if (samples.size() != grid.points) {
    throw ValidationError("quadrature: " + std::to_string(samples.size()) +
                          " samples for a grid of " + std::to_string(grid.points) + " points");
  }
  const double h = grid.spacing();
  if (rule == QuadratureRule::trapezoid) {
    double sum = 0.5 * (samples.front() + samples.back());
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) sum += samples[i];
    return sum * h;
  }
  if (samples.size() % 2 == 1) return simpson_odd(samples, h);
  // even count: Simpson on all but the last three intervals, 3/8 rule on those
  const std::size_t n = samples.size();
  const double head = simpson_odd(samples.first(n - 3), h);
  const double tail = 3.0 * h / 8.0 *
                      (samples[n - 4] + 3.0 * samples[n - 3] + 3.0 * samples[n - 2] + samples[n - 1]);
  return head + tail;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("trapezoid: mismatched lengths");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

GaussHermiteRule gauss_hermite(std::size_t order) {
  if (order == 0) throw ValidationError("gauss_hermite: order must be positive");
  // Jacobi matrix of the physicists' Hermite polynomials.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (std::size_t k = 1; k < order; ++k) {
    const double b = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  rule.scaled_weights.resize(order);
  // Christoffel numbers from the normalized Hermite functions: w e^{x^2} = 1 / sum_k phi_k(x)^2.
  // Stable for the outer nodes where eigenvector components lose all relative accuracy.
  const double norm0 = std::pow(std::numbers::pi, -0.25);
  for (std::size_t i = 0; i < order; ++i) {
    const double x = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    rule.nodes[i] = x;
    double prev = 0.0;
    double curr = norm0 * std::exp(-0.5 * x * x);
    double sum = curr * curr;
    for (std::size_t k = 0; k + 1 < order; ++k) {
      const double dk = static_cast<double>(k);
      const double next = std::sqrt(2.0 / (dk + 1.0)) * x * curr - std::sqrt(dk / (dk + 1.0)) * prev;
      prev = curr;
      curr = next;
      sum += curr * curr;
    }
    rule.scaled_weights[i] = 1.0 / sum;
    rule.weights[i] = rule.scaled_weights[i] * std::exp(-x * x);
  }
  return rule;
}

double finite_difference(const std::function<double(double)>& fn, double x, double h) {
  if (!(h > 0.0)) throw ValidationError("finite_difference: step must be positive");
  return (fn(x + h) - fn(x - h)) / (2.0 * h);
}

SeriesTruncation truncate_series(const std::function<double(std::size_t)>& term, double tol,
                                 std::size_t hard_cap) {
  SeriesTruncation out;
  out.tol = tol;
  out.hard_cap = hard_cap;
  out.tail_bound = std::numeric_limits<double>::infinity();

  double running = 0.0;
  double current = term(0);
  for (std::size_t m = 0; m <= hard_cap; ++m) {
    running += current;
    const double next = term(m + 1);
    if (running > 0.0) {
      const double q = current > 0.0 ? next / current : (next > 0.0 ? 1.0 : 0.0);
      if (q < 1.0) {
        const double tail = next / (1.0 - q) / running;
        if (tail < tol * tol) {
          out.achieved_M = m;
          out.tail_bound = tail;
          out.converged = true;
          return out;
        }
      }
    }
    current = next;
  }
  out.achieved_M = hard_cap;
  return out;
}

}  // namespace bgcs
