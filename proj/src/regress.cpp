#include "bgcs/regress.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>

#include "bgcs/coherent.hpp"
#include "bgcs/dynamics.hpp"
#include "bgcs/errors.hpp"
#include "bgcs/kernels.hpp"
#include "bgcs/observables.hpp"
#include "bgcs/physics.hpp"

namespace bgcs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Family kFamilies[] = {Family::A, Family::B, Family::C};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

CheckResult below(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured < threshold, measured, threshold, std::move(detail), true};
}

CheckResult above(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured > threshold, measured, threshold, std::move(detail), true};
}

CheckResult diagnostic(std::string name, double measured, std::string detail) {
  return {std::move(name), true, measured, 0.0, std::move(detail), false};
}

// Runs fn; a thrown exception becomes a failed check carrying its message.
void guarded(std::vector<CheckResult>& out, const std::string& name, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    out.push_back({name, false, std::nan(""), 0.0, std::string("exception: ") + e.what(), true});
  }
}

CoherentExpansion published(Family family, Alpha alpha, System system = System::bilayer) {
  return build_coherent(family, default_ladder(family), alpha, 1e-12, system);
}

std::vector<double> sweep_r() {
  std::vector<double> rs;
  for (int i = 0; i <= 12; ++i) rs.push_back(0.25 * i);
  return rs;
}

std::vector<double> sweep_theta() {
  std::vector<double> ts;
  for (int i = 0; i <= 16; ++i) ts.push_back(kPi / 8.0 * i);
  return ts;
}

void spectrum_checks(std::vector<CheckResult>& out) {
  const PhysicalParams p;
  const double e0 = bilayer_energy(0, Branch::positive, p);
  const double e1 = bilayer_energy(1, Branch::positive, p);
  const double e2 = bilayer_energy(2, Branch::positive, p);
  const double e3 = bilayer_energy(3, Branch::positive, p);
  const double err = std::max({std::abs(e0), std::abs(e1), std::abs(e2 - std::sqrt(2.0)),
                               std::abs(e3 - std::sqrt(6.0))});
  out.push_back(below("spectrum: bilayer E0=E1=0, E2=sqrt2, E3=sqrt6", err, 4e-16));

  double equi = 0.0;
  for (int n = 50; n < 400; ++n) {
    equi = std::max(equi, std::abs(bilayer_energy(n + 1, Branch::positive, p) -
                                   bilayer_energy(n, Branch::positive, p) - 1.0));
  }
  out.push_back(below("spectrum: bilayer gaps within 1% of hbar omega_c for n >= 50", equi, 0.01));

  double worst = -1.0;
  double prev = monolayer_energy(1, Branch::positive, p) - monolayer_energy(0, Branch::positive, p);
  for (int n = 1; n < 400; ++n) {
    const double gap = monolayer_energy(n + 1, Branch::positive, p) - monolayer_energy(n, Branch::positive, p);
    worst = std::max(worst, gap - prev);
    prev = gap;
  }
  out.push_back(below("spectrum: monolayer gaps strictly decreasing", worst, 0.0));
}

void energy_checks(std::vector<CheckResult>& out) {
  const PhysicalParams p;
  struct Golden {
    System system;
    Family family;
    double value;
  };
  const Golden goldens[] = {{System::bilayer, Family::A, 0.76},   {System::bilayer, Family::B, 1.56},
                            {System::monolayer, Family::A, 0.95}, {System::monolayer, Family::B, 1.37},
                            {System::monolayer, Family::C, 1.53}};
  for (const auto& g : goldens) {
    const std::string name = std::string("mean energy: ") + std::string(to_string(g.system)) + " " +
                             to_char(g.family) + ", r=1 vs " + fmt("%.2f", g.value);
    guarded(out, name, [&] {
      const double series = mean_energy(g.family, Alpha::polar(1.0, 0.0), p, g.system);
      const double summed = mean_energy_generic(published(g.family, Alpha::polar(1.0, 0.0), g.system), p);
      out.push_back(below(name, std::abs(series - g.value), 0.005,
                          fmt("series %.10f, expansion sum %.10f", series, summed)));
    });
  }
  guarded(out, "mean energy: series vs expansion sum", [&] {
    double worst = 0.0;
    for (auto system : {System::bilayer, System::monolayer}) {
      for (auto family : kFamilies) {
        for (double r : sweep_r()) {
          const auto a = Alpha::polar(r, 0.3);
          worst = std::max(worst, std::abs(mean_energy(family, a, p, system) -
                                           mean_energy_generic(published(family, a, system), p)));
        }
      }
    }
    out.push_back(below("mean energy: series vs expansion sum", worst, 1e-9));
  });
  guarded(out, "mean energy: monotone in r and linear in omega_c", [&] {
    double worst_drop = 0.0;
    double worst_scale = 0.0;
    for (auto family : kFamilies) {
      double prev = -1.0;
      for (double r : sweep_r()) {
        const double e = mean_energy(family, Alpha::polar(r, 0.0), p, System::bilayer);
        worst_drop = std::max(worst_drop, prev - e);
        prev = e;
        for (double b : {0.25, 1.0 / 6.0, 0.125}) {
          const double eb = mean_energy(family, Alpha::polar(r, 0.0), p.with_field(b), System::bilayer);
          worst_scale = std::max(worst_scale, std::abs(eb - b * e));
        }
      }
    }
    out.push_back(below("mean energy: monotone in r and linear in omega_c", std::max(worst_drop, worst_scale),
                        1e-12, fmt("largest drop %.3e, scaling error %.3e", worst_drop, worst_scale)));
  });
}

void period_checks(std::vector<CheckResult>& out) {
  const PhysicalParams p;
  struct Case {
    System system;
    Family family;
    double exact;
    double rounded;
    const char* rounded_text;
  };
  const Case cases[] = {
      {System::bilayer, Family::A, std::sqrt(2.0) * kPi, std::sqrt(2.0) * kPi, "sqrt2 pi"},
      {System::bilayer, Family::B, 2.0 * kPi / (std::sqrt(6.0) - std::sqrt(2.0)), 2.0 * kPi, "2 pi"},
      {System::monolayer, Family::A, 2.0 * kPi, 2.0 * kPi, "2 pi"},
      {System::monolayer, Family::B, 2.0 * kPi / (std::sqrt(2.0) - 1.0), 5.0 * kPi, "5 pi"},
      {System::monolayer, Family::C, 2.0 * kPi / (std::sqrt(3.0) - std::sqrt(2.0)), 6.0 * kPi, "6 pi"},
  };
  for (const auto& c : cases) {
    const std::string name = std::string("quasi-period: ") + std::string(to_string(c.system)) + " " +
                             to_char(c.family) + ", r=1";
    guarded(out, name, [&] {
      const auto est = quasi_period(c.family, Alpha::polar(1.0, 0.0), c.system, p);
      out.push_back(below(name, std::abs(est.tau - c.exact), 1e-12,
                          fmt("tau %.12f; published rounding ", est.tau) + c.rounded_text +
                              fmt(" = %.6f (ratio %.4f)", c.rounded, est.tau / c.rounded)));
    });
  }
}

void uncertainty_checks(std::vector<CheckResult>& out) {
  guarded(out, "uncertainty: r -> 0 limits (A 1/2, B and C 3/2)", [&] {
    const double target[] = {0.5, 1.5, 1.5};
    double worst = 0.0;
    std::string detail;
    for (int i = 0; i < 3; ++i) {
      const double prod = moments_spectral(published(kFamilies[i], Alpha::polar(1e-3, 0.0))).product;
      worst = std::max(worst, std::abs(prod - target[i]));
      detail += std::string(1, to_char(kFamilies[i])) + fmt(" %.9f ", prod);
    }
    out.push_back(below("uncertainty: r -> 0 limits (A 1/2, B and C 3/2)", worst, 1e-3, detail));
  });
  guarded(out, "uncertainty: product >= 1/2 and closed form vs spectral", [&] {
    const auto rs = sweep_r();
    const auto ts = sweep_theta();
    double floor = 1e300;
    double worst = 0.0;
    for (auto family : kFamilies) {
      const auto sweep = kernels::uncertainty_sweep_parallel(family, default_ladder(family), System::bilayer,
                                                             rs, ts, 1e-12);
      for (const auto& pt : sweep) {
        floor = std::min(floor, pt.moments.product);
        const auto cf = moments_closed_form(family, Alpha::polar(pt.r, pt.theta));
        worst = std::max({worst, std::abs(cf.mean_q - pt.moments.mean_q), std::abs(cf.mean_p - pt.moments.mean_p),
                          std::abs(cf.mean_q2 - pt.moments.mean_q2), std::abs(cf.mean_p2 - pt.moments.mean_p2)});
      }
    }
    out.push_back(above("uncertainty: product >= 1/2 - 1e-9 on the sweep grid", floor, 0.5 - 1e-9));
    out.push_back(below("uncertainty: closed-form vs spectral moments", worst, 1e-8));
  });
}

void coherent_checks(std::vector<CheckResult>& out, const RegressOptions& options) {
  guarded(out, "coherent: annihilation residual", [&] {
    double worst = 0.0;
    for (auto family : kFamilies) {
      for (cplx a : {cplx{0.5, 0.0}, cplx{1.0, 0.0}, std::polar(2.0, kPi / 3.0)}) {
        worst = std::max(worst, annihilation_residual(published(family, Alpha::from_complex(a)), default_ladder(family)));
      }
    }
    out.push_back(below("coherent: annihilation residual at alpha in {0.5, 1, 2e^{i pi/3}}", worst, 1e-10));
  });
  guarded(out, "coherent: recurrence vs closed-form coefficients", [&] {
    double worst = 0.0;
    for (auto family : kFamilies) {
      for (double r : {0.5, 1.0, 2.0, 3.0, 4.0}) {
        const auto e = published(family, Alpha::polar(r, 1.1));
        auto cf = closed_form_coefficients(family, default_ladder(family), e.alpha, e.M());
        cf[3] *= 1.0 + options.closed_form_perturbation;
        for (std::size_t n = 0; n < cf.size(); ++n) {
          const double scale = std::max(std::abs(cf[n]), 1e-300);
          if (std::abs(cf[n]) < 1e-200 && std::abs(e.coefficients[n]) < 1e-200) continue;
          worst = std::max(worst, std::abs(cf[n] - e.coefficients[n]) / scale);
        }
      }
    }
    out.push_back(below("coherent: recurrence vs closed-form coefficients (relative)", worst, 1e-12));
  });
  guarded(out, "coherent: truncation failure surfaced", [&] {
    bool surfaced = false;
    try {
      build_coherent(Family::A, LadderFunction::unit(), Alpha::polar(3.0, 0.0), 1e-14, System::bilayer, 32);
    } catch (const NumericalError&) {
      surfaced = true;
    }
    out.push_back({"coherent: r=3, tol=1e-14, hard_cap=32 raises a truncation error", surfaced, surfaced ? 1.0 : 0.0,
                   1.0, {}, true});
  });
}

void profile_checks(std::vector<CheckResult>& out) {
  const PhysicalParams p;
  const GridSpec grid;
  guarded(out, "profiles", [&] {
    double mass = 0.0;
    double min_rho = 0.0;
    double jx_theta0 = 0.0;
    double jy_theta0 = 1e300;
    double drho = 0.0;
    double dj = 0.0;
    for (auto family : kFamilies) {
      for (double theta : {0.0, kPi / 4.0, kPi / 2.0}) {
        const auto e = published(family, Alpha::polar(1.0, theta));
        const auto gen = field_profile(e, p, grid);
        const auto cf = field_profile(e, p, grid, 0.0, ProfileMode::closed_form);
        mass = std::max(mass, std::abs(integrate_profile(gen) - 1.0));
        for (std::size_t i = 0; i < gen.x.size(); ++i) {
          min_rho = std::min(min_rho, gen.rho[i]);
          drho = std::max(drho, std::abs(gen.rho[i] - cf.rho[i]));
          dj = std::max({dj, std::abs(gen.jx[i] - cf.jx[i]), std::abs(gen.jy[i] - cf.jy[i])});
        }
        if (theta == 0.0) {
          double jy = 0.0;
          for (std::size_t i = 0; i < gen.x.size(); ++i) {
            jx_theta0 = std::max(jx_theta0, std::abs(gen.jx[i]));
            jy = std::max(jy, std::abs(gen.jy[i]));
          }
          jy_theta0 = std::min(jy_theta0, jy);
        }
      }
    }
    out.push_back(below("profiles: integral of rho = 1", mass, 1e-6));
    out.push_back(above("profiles: rho >= -1e-12", min_rho, -1e-12));
    out.push_back(below("profiles: theta=0 max|Jx|", jx_theta0, 1e-10));
    out.push_back(above("profiles: theta=0 max|Jy| > 0", jy_theta0, 0.0));
    out.push_back(below("profiles: generic vs closed-form rho", drho, 1e-6));
    out.push_back(below(std::string("profiles: generic vs closed-form currents (") + kCurrentThresholdVersion + ")",
                        dj, kCurrentThreshold));
  });
  guarded(out, "profiles: density peak moves with theta (A, r=1)", [&] {
    const auto a = field_profile(published(Family::A, Alpha::polar(1.0, 0.0)), p, grid);
    const auto b = field_profile(published(Family::A, Alpha::polar(1.0, kPi / 2.0)), p, grid);
    const auto ia = std::max_element(a.rho.begin(), a.rho.end()) - a.rho.begin();
    const auto ib = std::max_element(b.rho.begin(), b.rho.end()) - b.rho.begin();
    const double shift = std::abs(a.x[static_cast<std::size_t>(ia)] - b.x[static_cast<std::size_t>(ib)]);
    out.push_back(above("profiles: density peak moves with theta (A, r=1)", shift, grid.spacing()));
  });
}

void dynamics_checks(std::vector<CheckResult>& out) {
  const PhysicalParams p;
  const GridSpec grid;
  guarded(out, "dynamics: unitarity and normalization", [&] {
    double norm_err = 0.0;
    double mass_err = 0.0;
    double comp = 0.0;
    for (auto system : {System::bilayer, System::monolayer}) {
      for (auto family : kFamilies) {
        const auto e = published(family, Alpha::polar(1.0, 0.4), system);
        for (double t : {0.0, 0.7, kPi, 2.0 * kPi, 10.0, 1e3}) {
          const auto ev = evolve(e, t, p);
          norm_err = std::max(norm_err, std::abs(ev.norm() - 1.0));
          if (t <= 10.0) mass_err = std::max(mass_err, std::abs(integrate_profile(field_profile(e, p, grid, t)) - 1.0));
          const auto twice = evolve(evolve(e, 0.5 * t, p), 0.5 * t, p).coefficients();
          const auto once = ev.coefficients();
          for (std::size_t n = 0; n < once.size(); ++n) comp = std::max(comp, std::abs(twice[n] - once[n]));
        }
      }
    }
    out.push_back(below("dynamics: ||Psi(t)|| = 1", norm_err, 1e-12));
    out.push_back(below("dynamics: integral of rho(t) = 1", mass_err, 1e-6));
    out.push_back(below("dynamics: evolve(evolve(s, t/2), t/2) = evolve(s, t)", comp, 1e-12));
  });
  guarded(out, "dynamics: revival of family C", [&] {
    const auto e = published(Family::C, Alpha::polar(1.0, 0.0));
    const double full = revival_distance(e, p, grid, 0.0, 2.0 * kPi);
    const double half = revival_distance(e, p, grid, 0.0, kPi);
    out.push_back(below("dynamics: C revival distance at 2 pi", full, 0.02));
    out.push_back(above("dynamics: C distance at pi over distance at 2 pi", half / full, 5.0,
                        fmt("distance at pi %.6f, at 2 pi %.6f", half, full)));
    const double times[] = {0.0, 2.0 * kPi, 4.0 * kPi};
    const auto frames = density_movie(e, p, grid, times);
    out.push_back(diagnostic("dynamics: C peak-relative drift over 0, 2pi, 4pi",
                             peak_relative_difference(frames[0].rho, frames[2].rho),
                             fmt("(0,2pi) %.4f (2pi,4pi) %.4f (0,4pi) %.4f",
                                 peak_relative_difference(frames[0].rho, frames[1].rho),
                                 peak_relative_difference(frames[1].rho, frames[2].rho),
                                 peak_relative_difference(frames[0].rho, frames[2].rho))));
  });
  guarded(out, "dynamics: family A quasi-stability", [&] {
    const auto e = published(Family::A, Alpha::polar(1.0, 0.0));
    const double tau = std::sqrt(2.0) * kPi;
    const double times[] = {0.0, tau, 2.0 * tau};
    const auto frames = density_movie(e, p, grid, times);
    out.push_back(diagnostic("dynamics: A peak-relative drift at sqrt2 pi, 2 sqrt2 pi",
                             peak_relative_difference(frames[0].rho, frames[1].rho),
                             fmt("%.4f %.4f; revival distance %.4f",
                                 peak_relative_difference(frames[0].rho, frames[1].rho),
                                 peak_relative_difference(frames[0].rho, frames[2].rho),
                                 revival_distance(e, p, grid, 0.0, tau))));
  });
  guarded(out, "dynamics: continuity", [&] {
    for (auto family : kFamilies) {
      const auto e = published(family, Alpha::polar(1.0, 0.4));
      out.push_back(diagnostic(std::string("dynamics: continuity residual, bilayer ") + to_char(family),
                               continuity_residual(e, p, grid, 1.0),
                               "max|drho/dt + (hbar/m*) dJx/dx| / max|drho/dt|"));
    }
  });
}

void physics_checks(std::vector<CheckResult>& out) {
  const PhysicalParams p;
  guarded(out, "physics: orthonormality n, m <= 40", [&] {
    const auto rule = gauss_hermite(64);
    std::vector<std::vector<double>> psi(rule.nodes.size(), std::vector<double>(41));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) hermite_functions_xi(rule.nodes[i], psi[i]);
    double worst = 0.0;
    for (int n = 0; n <= 40; ++n) {
      for (int m = 0; m <= n; ++m) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          s += rule.scaled_weights[i] * psi[i][static_cast<std::size_t>(n)] *
               psi[i][static_cast<std::size_t>(m)];
        }
        worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
      }
    }
    out.push_back(below("physics: orthonormality n, m <= 40", worst, 1e-8));
  });
  guarded(out, "physics: eigen residual n <= 40", [&] {
    double worst = 0.0;
    for (auto system : {System::bilayer, System::monolayer}) {
      for (int n = 0; n <= 40; ++n) {
        for (auto branch : {Branch::positive, Branch::negative}) {
          const auto state = build_eigenstate({n, branch}, 44, p, system);
          const auto image = apply_hamiltonian(state);
          const double e = level_energy(system, n, branch, p);
          double sum = 0.0;
          for (std::size_t m = 0; m < image.size(); ++m) {
            const cplx u = m < state.size() ? state.upper[m] : cplx{};
            const cplx l = m < state.size() ? state.lower[m] : cplx{};
            sum += std::norm(image.upper[m] - e * u) + std::norm(image.lower[m] - e * l);
          }
          worst = std::max(worst, std::sqrt(sum));
        }
      }
    }
    out.push_back(below("physics: eigen residual n <= 40", worst, 1e-10));
  });
}

}  // namespace

std::vector<CheckResult> run_regression(const RegressOptions& options) {
  std::vector<CheckResult> out;
  spectrum_checks(out);
  energy_checks(out);
  period_checks(out);
  uncertainty_checks(out);
  coherent_checks(out, options);
  profile_checks(out);
  dynamics_checks(out);
  physics_checks(out);
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed || !r.asserted; });
}

}  // namespace bgcs
