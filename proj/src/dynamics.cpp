#include "bgcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bgcs/errors.hpp"

namespace bgcs {

std::vector<cplx> EvolvedExpansion::coefficients() const {
  std::vector<cplx> out(base.coefficients.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = base.coefficients[n] * phases[n];
  return out;
}

double EvolvedExpansion::norm() const {
  double sum = 0.0;
  for (const auto& c : coefficients()) sum += std::norm(c);
  return std::sqrt(sum);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> phase_factors(System system, std::size_t count, double t, const PhysicalParams& params) {
  std::vector<cplx> out(count);
  for (std::size_t n = 0; n < count; ++n) {
    const double energy = level_energy(system, static_cast<int>(n), Branch::positive, params);
    const double angle = std::fmod(energy * t / params.hbar(), kTwoPi);
    out[n] = energy == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, -angle);
  }
  return out;
}

}  // namespace

EvolvedExpansion evolve(const CoherentExpansion& expansion, double t, const PhysicalParams& params) {
  if (!std::isfinite(t)) throw ValidationError("evolution time must be finite");
  EvolvedExpansion out;
  out.base = expansion;
  out.t = t;
  out.system = expansion.system;
  out.phases = phase_factors(expansion.system, expansion.coefficients.size(), t, params);
  return out;
}

EvolvedExpansion evolve(const EvolvedExpansion& state, double dt, const PhysicalParams& params) {
  if (!std::isfinite(dt)) throw ValidationError("evolution time must be finite");
  EvolvedExpansion out = state;
  out.t = state.t + dt;
  const auto step = phase_factors(state.system, state.phases.size(), dt, params);
  for (std::size_t n = 0; n < step.size(); ++n) {
    const cplx p = state.phases[n] * step[n];
    out.phases[n] = p / std::abs(p);
  }
  return out;
}

SpinorWavefunction realize_evolved(const EvolvedExpansion& state, const PhysicalParams& params) {
  CoherentExpansion moved = state.base;
  moved.coefficients = state.coefficients();
  return realize(moved, params);
}

PeriodEstimate bounding_period(double mean_energy, System system, const PhysicalParams& params) {
  if (!std::isfinite(mean_energy) || mean_energy < 0.0) {
    throw ValidationError("mean energy must be finite and >= 0");
  }
  const int first = system == System::bilayer ? 1 : 0;
  double below = level_energy(system, first, Branch::positive, params);
  for (int n = first + 1; n <= kPeriodScanCap; ++n) {
    const double above = level_energy(system, n, Branch::positive, params);
    if (std::abs(mean_energy - below) <= 1e-12 || std::abs(mean_energy - above) <= 1e-12) {
      throw ValidationError("mean energy coincides with a Landau level; no bounding pair");
    }
    if (below < mean_energy && mean_energy < above) {
      PeriodEstimate out;
      out.mean_energy = mean_energy;
      out.lower_level = below;
      out.upper_level = above;
      out.tau = kTwoPi * params.hbar() / (above - below);
      return out;
    }
    below = above;
  }
  throw NumericalError("mean energy lies above the level scan cap (n = " + std::to_string(kPeriodScanCap) + ")");
}

PeriodEstimate quasi_period(Family family, Alpha alpha, System system, const PhysicalParams& params) {
  return bounding_period(mean_energy(family, alpha, params, system), system, params);
}

PeriodEstimate quasi_period(const CoherentExpansion& expansion, const PhysicalParams& params) {
  return bounding_period(mean_energy_generic(expansion, params), expansion.system, params);
}

namespace {

double l2_norm(std::span<const double> x, std::span<const double> y) {
  std::vector<double> sq(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) sq[i] = y[i] * y[i];
  return std::sqrt(trapezoid(x, sq));
}

}  // namespace

double revival_distance(const CoherentExpansion& expansion, const PhysicalParams& params, const GridSpec& grid,
                        double t_a, double t_b) {
  const auto a = field_profile(expansion, params, grid, t_a);
  const auto b = field_profile(expansion, params, grid, t_b);
  std::vector<double> diff(a.rho.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = b.rho[i] - a.rho[i];
  return l2_norm(a.x, diff) / l2_norm(a.x, a.rho);
}

double peak_relative_difference(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw ValidationError("profiles must have matching non-zero length");
  double peak = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    peak = std::max(peak, std::abs(a[i]));
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst / peak;
}

std::vector<FieldProfile> density_movie(const CoherentExpansion& expansion, const PhysicalParams& params,
                                        const GridSpec& grid, std::span<const double> times, Execution exec) {
  if (times.empty()) throw ValidationError("density movie needs at least one time");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0) || !std::isfinite(times[i])) throw ValidationError("movie times must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw ValidationError("movie times must be sorted");
  }
  std::vector<FieldProfile> frames;
  frames.reserve(times.size());
  for (double t : times) frames.push_back(field_profile(expansion, params, grid, t, ProfileMode::generic, exec));
  return frames;
}

double continuity_residual(const CoherentExpansion& expansion, const PhysicalParams& params,
                           const GridSpec& grid, double t, double dt) {
  if (!(dt > 0.0)) throw ValidationError("time step must be positive");
  const double t0 = std::max(t, dt);
  const auto before = field_profile(expansion, params, grid, t0 - dt);
  const auto now = field_profile(expansion, params, grid, t0);
  const auto after = field_profile(expansion, params, grid, t0 + dt);
  const double h = grid.spacing();
  const double scale = params.hbar() / params.m_star();
  double worst = 0.0;
  double peak = 0.0;
  for (std::size_t i = 1; i + 1 < now.x.size(); ++i) {
    const double drho = (after.rho[i] - before.rho[i]) / (2.0 * dt);
    const double djx = scale * (now.jx[i + 1] - now.jx[i - 1]) / (2.0 * h);
    worst = std::max(worst, std::abs(drho + djx));
    peak = std::max(peak, std::abs(drho));
  }
  return peak > 0.0 ? worst / peak : worst;
}

}  // namespace bgcs
