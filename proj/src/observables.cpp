#include "bgcs/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "bgcs/dynamics.hpp"
#include "bgcs/errors.hpp"
#include "bgcs/kernels.hpp"

namespace bgcs {

namespace {

struct ComponentSums {
  cplx lower1{};  // <a->
  cplx lower2{};  // <a-^2>
  double number = 0.0;
  double norm = 0.0;
};

void accumulate(std::span<const cplx> c, ComponentSums& s) {
  for (std::size_t m = 0; m < c.size(); ++m) {
    const double dm = static_cast<double>(m);
    s.norm += std::norm(c[m]);
    s.number += dm * std::norm(c[m]);
    if (m >= 1) s.lower1 += std::conj(c[m - 1]) * std::sqrt(dm) * c[m];
    if (m >= 2) s.lower2 += std::conj(c[m - 2]) * std::sqrt(dm * (dm - 1.0)) * c[m];
  }
}

ObservableReport finish(double q, double p, double q2, double p2) {
  ObservableReport out;
  out.mean_q = q;
  out.mean_p = p;
  out.mean_q2 = q2;
  out.mean_p2 = p2;
  out.sigma_q = std::sqrt(std::max(q2 - q * q, 0.0));
  out.sigma_p = std::sqrt(std::max(p2 - p * p, 0.0));
  out.product = out.sigma_q * out.sigma_p;
  return out;
}

}  // namespace

ObservableReport moments_spectral(const SpinorWavefunction& state) {
  const std::size_t size = state.size();
  const double total = state.norm_squared();
  if (!(total > 0.0)) throw ValidationError("moments of the zero state are undefined");
  if (size >= 2) {
    double top = 0.0;
    for (std::size_t m = size - 2; m < size; ++m) top += std::norm(state.upper[m]) + std::norm(state.lower[m]);
    if (top > 1e-8 * total) {
      throw NumericalError("truncation guard band violated: top two basis slots hold " +
                           std::to_string(top / total) + " of the weight");
    }
  }
  ComponentSums s;
  accumulate(state.upper, s);
  accumulate(state.lower, s);
  const double q = std::numbers::sqrt2 * s.lower1.real() / total;
  const double p = std::numbers::sqrt2 * s.lower1.imag() / total;
  const double n_half = (s.number + 0.5 * total) / total;
  const double re2 = s.lower2.real() / total;
  return finish(q, p, n_half + re2, n_half - re2);
}

ObservableReport moments_spectral(const CoherentExpansion& expansion) {
  return moments_spectral(realize(expansion));
}

// --- published series -----------------------------------------------------------

namespace {

double lf(double n) { return std::lgamma(n + 1.0); }

// sum_{n >= start} term(n) with term(n) = r^{2n} exp(-log_den(n)) * numer(n),
// cut once past the peak and below 1e-14 of the running sum.
double series(double r, int start, const std::function<double(int)>& log_den,
              const std::function<double(int)>& numer = [](int) { return 1.0; }) {
  const double r2 = r * r;
  if (r2 == 0.0) return start == 0 ? std::exp(-log_den(0)) * numer(0) : 0.0;
  const double log_r2 = std::log(r2);
  double sum = 0.0;
  for (int n = start; n < 20000; ++n) {
    const double t = std::exp(n * log_r2 - log_den(n)) * numer(n);
    sum += t;
    if (n > r2 + 2.0 && std::abs(t) <= 1e-14 * std::abs(sum)) return sum;
  }
  throw NumericalError("moment series did not converge");
}

}  // namespace

ObservableReport moments_closed_form(Family family, Alpha alpha) {
  const double r = alpha.r;
  const double r2 = r * r;
  const cplx a = alpha.value();
  const double re = a.real();
  const double im = a.imag();
  const double anis = re * re - im * im;
  const double e = std::exp(r2);
  const double sqrt2 = std::numbers::sqrt2;

  switch (family) {
    case Family::A: {
      const double norm = 2.0 * e - r2 - 1.0;
      const double s1 = e + series(r, 2, [](int n) { return 0.5 * (lf(n) + lf(n + 1)); },
                                   [](int n) { return std::sqrt(n - 1.0); });
      const double s2 = 1.0 + 3.0 * r2 + 2.0 * series(r, 2, [](int n) { return lf(n); },
                                                     [](int n) { return 2.0 * n - 1.0; });
      const double s3 = e + series(r, 2, [](int n) { return 0.5 * (lf(n - 2) + lf(n + 2)); });
      return finish(sqrt2 * re * s1 / norm, sqrt2 * im * s1 / norm, (s2 + 2.0 * anis * s3) / (2.0 * norm),
                    (s2 - 2.0 * anis * s3) / (2.0 * norm));
    }
    case Family::B: {
      const double norm = 2.0 * e - 1.0;
      const double s1 = series(r, 0, [](int n) { return 0.5 * (lf(n) + lf(n + 1)); },
                               [](int n) { return std::sqrt(n + 2.0); }) +
                        series(r, 1, [](int n) { return 0.5 * (lf(n - 1) + lf(n + 1)); });
      const double s2 = 1.0 + 2.0 * series(r, 0, [](int n) { return lf(n); },
                                           [](int n) { return 2.0 * n + 1.0; });
      const double s3 = series(r, 1, [](int n) { return 0.5 * (lf(n - 1) + lf(n + 2)); },
                               [](int n) { return std::sqrt(n + 1.0); }) +
                        series(r, 0, [](int n) { return 0.5 * (lf(n) + lf(n + 1)); },
                               [](int n) { return std::sqrt(n + 3.0); });
      return finish(sqrt2 * re * s1 / norm, sqrt2 * im * s1 / norm, (s2 + 2.0 * anis * s3) / (2.0 * norm),
                    (s2 - 2.0 * anis * s3) / (2.0 * norm));
    }
    case Family::C: {
      const double F = hypergeometric_0F2(1.0, 2.0, r2);
      const double s1 =
          series(r, 0, [](int n) { return lf(n + 1) + 0.5 * (lf(n + 2) + 3.0 * lf(n)); }) +
          series(r, 0, [](int n) { return lf(n) + 0.5 * (lf(n + 2) + 3.0 * lf(n + 1)); },
                 [](int n) { return std::sqrt(n + 3.0); });
      const double s2 = series(r, 0, [](int n) { return 2.0 * lf(n) + lf(n + 1); },
                               [](int n) { return 2.0 * n + 3.0; });
      const double s3 =
          series(r, 0, [](int n) { return lf(n + 2) + 0.5 * (lf(n + 3) + 3.0 * lf(n)); },
                 [](int n) { return std::sqrt(n + 2.0); }) +
          series(r, 0, [](int n) { return lf(n) + 0.5 * (lf(n + 1) + 3.0 * lf(n + 2)); },
                 [](int n) { return std::sqrt(n + 4.0); });
      const double q = re * s1 / (sqrt2 * F);
      const double p = im * s1 / (sqrt2 * F);
      return finish(q, p, (s2 + anis * s3) / (2.0 * F), (s2 - anis * s3) / (2.0 * F));
    }
  }
  throw ValidationError("unsupported family");
}

double mean_energy(Family family, Alpha alpha, const PhysicalParams& params, System system) {
  const double r = alpha.r;
  const double r2 = r * r;
  const double e = std::exp(r2);
  if (system == System::bilayer) {
    const double scale = params.hbar() * params.omega_c_star();
    switch (family) {
      case Family::A:
        return 2.0 * scale / (2.0 * e - r2 - 1.0) *
               series(r, 2, [](int n) { return lf(n); }, [](int n) { return std::sqrt(n * (n - 1.0)); });
      case Family::B:
        return 2.0 * scale / (2.0 * e - 1.0) *
               series(r, 1, [](int n) { return lf(n); }, [](int n) { return std::sqrt(n * (n + 1.0)); });
      case Family::C:
        return scale / hypergeometric_0F2(1.0, 2.0, r2) *
               series(r, 0, [](int n) { return 2.0 * lf(n) + lf(n + 1); },
                      [](int n) { return std::sqrt((n + 1.0) * (n + 2.0)); });
    }
  }
  const double scale = params.hbar() * params.v_fermi() * std::sqrt(params.omega());
  switch (family) {
    case Family::A:  // weights 1, 2 r^{2n}/n! over 2e^{r^2} - 1
      return 2.0 * scale / (2.0 * e - 1.0) *
             series(r, 1, [](int n) { return lf(n); }, [](int n) { return std::sqrt(double(n)); });
    case Family::B:  // weights e^{-r^2} r^{2(n-1)}/(n-1)!, n >= 1
      return scale * std::exp(-r2) *
             series(r, 0, [](int n) { return lf(n); }, [](int n) { return std::sqrt(n + 1.0); });
    case Family::C:
      return scale / hypergeometric_0F2(1.0, 2.0, r2) *
             series(r, 0, [](int n) { return 2.0 * lf(n) + lf(n + 1); },
                    [](int n) { return std::sqrt(n + 2.0); });
  }
  throw ValidationError("unsupported family");
}

double mean_energy_generic(const CoherentExpansion& expansion, const PhysicalParams& params) {
  double sum = 0.0;
  double weight = 0.0;
  for (std::size_t n = 0; n < expansion.coefficients.size(); ++n) {
    const double w = std::norm(expansion.coefficients[n]);
    weight += w;
    sum += w * level_energy(expansion.system, static_cast<int>(n), Branch::positive, params);
  }
  return sum / weight;
}

// --- profiles ----------------------------------------------------------------------

namespace {

FieldProfile make_profile(const GridSpec& grid, kernels::ProfileSamples samples) {
  FieldProfile out;
  out.grid = grid;
  out.x = grid.samples();
  out.rho = std::move(samples.rho);
  out.jx = std::move(samples.jx);
  out.jy = std::move(samples.jy);
  return out;
}

}  // namespace

FieldProfile field_profile(const SpinorWavefunction& state, const GridSpec& grid, Execution exec) {
  grid.validate();
  const auto xs = grid.samples();
  auto samples = exec == Execution::parallel ? kernels::spinor_profile_parallel(state, xs)
                                             : kernels::spinor_profile_serial(state, xs);
  auto out = make_profile(grid, std::move(samples));
  out.system = state.system;
  out.params = state.params;
  return out;
}

FieldProfile field_profile(const CoherentExpansion& expansion, const PhysicalParams& params,
                           const GridSpec& grid, double t, ProfileMode mode, Execution exec) {
  grid.validate();
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("profile time must be finite and >= 0");
  const double reach = 8.0 / std::sqrt(params.omega());
  if (grid.x_min > params.center() - reach || grid.x_max < params.center() + reach) {
    throw ValidationError("grid must cover [x0 - 8/sqrt(omega), x0 + 8/sqrt(omega)] = [" +
                          std::to_string(params.center() - reach) + ", " +
                          std::to_string(params.center() + reach) + "]");
  }

  FieldProfile out;
  if (mode == ProfileMode::generic) {
    const auto evolved = evolve(expansion, t, params);
    out = field_profile(realize_evolved(evolved, params), grid, exec);
    const double mass = integrate_profile(out);
    if (1.0 - mass > 1e-6) {
      throw NumericalError("grid too narrow: " + std::to_string(1.0 - mass) +
                           " of the probability lies outside [" + std::to_string(grid.x_min) + ", " +
                           std::to_string(grid.x_max) + "]");
    }
  } else {
    if (expansion.system != System::bilayer) {
      throw ValidationError("closed-form profiles exist for the bilayer only");
    }
    if (t != 0.0) throw ValidationError("closed-form profiles are static (t = 0)");
    if (expansion.ladder_name != default_ladder(expansion.family).name()) {
      throw ValidationError("closed-form profiles need the published ladder function of the family");
    }
    const auto xs = grid.samples();
    auto samples =
        exec == Execution::parallel
            ? kernels::closed_form_profile_parallel(expansion.family, expansion.alpha, expansion.M(), params, xs)
            : kernels::closed_form_profile_serial(expansion.family, expansion.alpha, expansion.M(), params, xs);
    out = make_profile(grid, std::move(samples));
  }
  out.family = expansion.family;
  out.alpha = expansion.alpha;
  out.t = t;
  out.system = expansion.system;
  out.params = params;
  return out;
}

double integrate_profile(const FieldProfile& profile) { return trapezoid(profile.x, profile.rho); }

}  // namespace bgcs
