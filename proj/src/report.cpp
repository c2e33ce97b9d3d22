#include "bgcs/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "bgcs/dynamics.hpp"
#include "bgcs/errors.hpp"
#include "bgcs/kernels.hpp"
#include "bgcs/observables.hpp"

namespace bgcs {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> or_default(const std::vector<double>& values, std::vector<double> fallback) {
  return values.empty() ? fallback : values;
}

std::vector<double> steps(double first, double last, double step) {
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((last - first) / step + 1e-9));
  for (int i = 0; i <= count; ++i) out.push_back(first + step * i);
  return out;
}

Alpha first_alpha(const RunConfig& c) {
  return Alpha::polar(c.r.empty() ? 1.0 : c.r.front(), c.theta.empty() ? 0.0 : c.theta.front());
}

bool published_ladder(const RunConfig& c) { return c.ladder.empty() || c.ladder == default_ladder(c.family).name(); }

}  // namespace

PhysicalParams RunConfig::params() const { return PhysicalParams::from_oscillator(hbar, omega_c, omega, k, vf); }

LadderFunction RunConfig::ladder_function() const {
  return ladder.empty() ? default_ladder(family) : LadderFunction::from_name(ladder);
}

void RunConfig::validate() const {
  params();
  grid.validate();
  if (!(tol > 0.0 && tol <= 1e-6)) throw ValidationError("tol must lie in (0, 1e-6]");
  if (n_max < 0) throw ValidationError("n-max must be >= 0");
  for (double v : r) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("r values must be finite and >= 0");
  }
  for (double v : theta) {
    if (!std::isfinite(v)) throw ValidationError("theta values must be finite");
  }
  for (double v : b_field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("b-field values must be finite and > 0");
  }
  for (double v : times) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ValidationError("times must be finite and >= 0");
  }
  ladder_function();
}

void Table::add(std::vector<double> row) {
  if (row.size() != header.size()) throw ValidationError("table row width does not match header");
  for (double v : row) {
    if (!std::isfinite(v)) throw NumericalError("non-finite value in output table");
  }
  rows.push_back(std::move(row));
}

void Table::write(std::ostream& os) const {
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  char buf[40];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

std::string Table::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

Table cmd_spectrum(const RunConfig& c) {
  c.validate();
  const auto p = c.params();
  Table t{{"n", "E_n", "gap"}, {}};
  for (int n = 0; n <= c.n_max; ++n) {
    const double e = level_energy(c.system, n, Branch::positive, p);
    t.add({double(n), e, level_energy(c.system, n + 1, Branch::positive, p) - e});
  }
  return t;
}

Table cmd_coherent(const RunConfig& c) {
  c.validate();
  const auto e = build_coherent(c.family, c.ladder_function(), first_alpha(c), c.tol, c.system);
  Table t{{"n", "re_a", "im_a", "abs2_a"}, {}};
  for (std::size_t n = 0; n < e.coefficients.size(); ++n) {
    const cplx a = e.coefficients[n];
    t.add({double(n), a.real(), a.imag(), std::norm(a)});
  }
  return t;
}

Table cmd_uncertainty(const RunConfig& c) {
  c.validate();
  const auto rs = or_default(c.r, steps(0.0, 3.0, 0.25));
  const auto ts = or_default(c.theta, steps(0.0, 2.0 * kPi, kPi / 8.0));
  const auto sweep = kernels::uncertainty_sweep_parallel(c.family, c.ladder_function(), c.system, rs, ts, c.tol);
  Table t{{"r", "theta", "mean_q", "mean_p", "mean_q2", "mean_p2", "product"}, {}};
  for (const auto& pt : sweep) {
    const auto& m = pt.moments;
    t.add({pt.r, pt.theta, m.mean_q, m.mean_p, m.mean_q2, m.mean_p2, m.product});
  }
  return t;
}

Table cmd_profile(const RunConfig& c) {
  c.validate();
  const auto p = c.params();
  const double r = c.r.empty() ? 1.0 : c.r.front();
  const double time = c.times.empty() ? 0.0 : c.times.front();
  Table t{{"theta", "x", "rho", "jx", "jy"}, {}};
  for (double theta : or_default(c.theta, {0.0, kPi / 4.0, kPi / 2.0})) {
    const auto e = build_coherent(c.family, c.ladder_function(), Alpha::polar(r, theta), c.tol, c.system);
    const auto prof = field_profile(e, p, c.grid, time);
    for (std::size_t i = 0; i < prof.x.size(); ++i) t.add({theta, prof.x[i], prof.rho[i], prof.jx[i], prof.jy[i]});
  }
  return t;
}

Table cmd_evolve(const RunConfig& c) {
  c.validate();
  const auto e = build_coherent(c.family, c.ladder_function(), first_alpha(c), c.tol, c.system);
  const auto times = or_default(c.times, {0.0, 2.0 * kPi, 4.0 * kPi});
  const auto frames = density_movie(e, c.params(), c.grid, times);
  Table t{{"x", "t", "rho"}, {}};
  for (const auto& f : frames) {
    for (std::size_t i = 0; i < f.x.size(); ++i) t.add({f.x[i], f.t, f.rho[i]});
  }
  return t;
}

Table cmd_energy(const RunConfig& c) {
  c.validate();
  const auto base = c.params();
  const double theta = c.theta.empty() ? 0.0 : c.theta.front();
  Table t{{"b_field", "r", "mean_energy"}, {}};
  for (double b : or_default(c.b_field, {0.25, 1.0 / 6.0, 0.125})) {
    const auto p = base.with_field(b);
    for (double r : or_default(c.r, steps(0.0, 3.0, 0.1))) {
      const auto a = Alpha::polar(r, theta);
      const double e = published_ladder(c)
                           ? mean_energy(c.family, a, p, c.system)
                           : mean_energy_generic(build_coherent(c.family, c.ladder_function(), a, c.tol, c.system), p);
      t.add({b, r, e});
    }
  }
  return t;
}

Table cmd_period(const RunConfig& c) {
  c.validate();
  const auto p = c.params();
  const auto e = build_coherent(c.family, c.ladder_function(), first_alpha(c), c.tol, c.system);
  const auto est = published_ladder(c) ? quasi_period(c.family, e.alpha, c.system, p) : quasi_period(e, p);
  const double revival = revival_distance(e, p, c.grid, 0.0, est.tau);
  Table t{{"mean_energy", "E_j", "E_j1", "tau", "tau_over_pi", "revival_distance"}, {}};
  t.add({est.mean_energy, est.lower_level, est.upper_level, est.tau, est.tau / kPi, revival});
  return t;
}

}  // namespace bgcs
