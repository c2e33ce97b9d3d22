#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bgcs {

/// Uniform grid on [x_min, x_max] with `points` samples, endpoints included.
struct GridSpec {
  double x_min = -14.0;
  double x_max = 10.0;
  std::size_t points = 1201;

  static constexpr std::size_t kMinPoints = 16;

  /// Throws ValidationError unless x_min < x_max, both finite, points >= 16.
  void validate() const;
  double spacing() const { return (x_max - x_min) / static_cast<double>(points - 1); }
  double at(std::size_t i) const;
  std::vector<double> samples() const;
};

enum class QuadratureRule { trapezoid, simpson };

/// Composite rule over uniformly spaced samples.  Trapezoid is O(h^2) on
/// generic smooth integrands; Simpson is O(h^4) and needs an odd sample count
/// (an even count falls back to Simpson on the first n-1 points plus a 3/8
/// panel at the end).
double quadrature(std::span<const double> samples, const GridSpec& grid,
                  QuadratureRule rule = QuadratureRule::trapezoid);

/// Trapezoid rule for samples with arbitrary (sorted) abscissae.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Gauss-Hermite rule for weight exp(-t^2), via Golub-Welsch.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  // weights[i] * exp(nodes[i]^2), for integrands that already carry the Gaussian.
  std::vector<double> scaled_weights;
};
GaussHermiteRule gauss_hermite(std::size_t order);

/// Central difference (f(x+h) - f(x-h)) / 2h.
double finite_difference(const std::function<double(double)>& fn, double x, double h);

/// Bookkeeping for a truncated positive series.
struct SeriesTruncation {
  double tol = 0.0;
  std::size_t hard_cap = 0;
  std::size_t achieved_M = 0;
  double tail_bound = 0.0;
  bool converged = false;
};

/// Truncate a series of non-negative weights produced by `term(n)`, n = 0, 1, ...
/// Stops at the first M whose successor weight falls below tol^2 times the
/// running sum while the term ratio is below one; the tail beyond M is bounded
/// geometrically by w_{M+1} / (1 - q).  If no such M exists at or below
/// hard_cap the result has converged = false and tail_bound = +inf.
SeriesTruncation truncate_series(const std::function<double(std::size_t)>& term, double tol,
                                 std::size_t hard_cap);

}  // namespace bgcs
