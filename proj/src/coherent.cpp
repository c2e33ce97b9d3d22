#include "bgcs/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "bgcs/errors.hpp"

namespace bgcs {

Family parse_family(std::string_view name) {
  if (name == "A" || name == "a") return Family::A;
  if (name == "B" || name == "b") return Family::B;
  if (name == "C" || name == "c") return Family::C;
  throw ValidationError("unknown family '" + std::string(name) + "' (expected A, B or C)");
}

char to_char(Family family) {
  switch (family) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
  }
  return '?';
}

int free_index(Family family) {
  switch (family) {
    case Family::A: return 0;
    case Family::B: return 1;
    case Family::C: return 2;
  }
  return 0;
}

LadderFunction default_ladder(Family family) {
  switch (family) {
    case Family::A: return LadderFunction::unit();
    case Family::B: return LadderFunction::shift1();
    case Family::C: return LadderFunction::shift2();
  }
  return LadderFunction::unit();
}

Alpha Alpha::polar(double r, double theta) {
  if (!std::isfinite(r) || !std::isfinite(theta)) throw ValidationError("alpha must be finite");
  if (r < 0.0) {
    r = -r;
    theta += std::numbers::pi;
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  if (theta >= two_pi) theta = 0.0;
  return {r, theta};
}

Alpha Alpha::from_complex(cplx value) { return polar(std::abs(value), std::arg(value)); }

namespace {

void check_family(Family family, const LadderFunction& f) {
  const bool f1 = f(1) != 0.0;
  const bool f2 = f(2) != 0.0;
  const auto fail = [&](const char* why) {
    throw ValidationError(std::string("ladder function '") + f.name() + "' does not fit family " +
                          to_char(family) + ": " + why);
  };
  switch (family) {
    case Family::A:
      if (!f1) fail("needs f(1) != 0");
      break;
    case Family::B:
      if (f1 || !f2) fail("needs f(1) == 0 and f(2) != 0");
      break;
    case Family::C:
      if (f1 || f2) fail("needs f(1) == f(2) == 0");
      break;
  }
}

}  // namespace

namespace {
std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}
}  // namespace

CoherentExpansion build_coherent(Family family, const LadderFunction& f, Alpha alpha, double tol,
                                 System system, std::size_t hard_cap) {
  if (!(tol > 0.0 && tol <= 1e-6)) throw ValidationError("tol must lie in (0, 1e-6]");
  check_family(family, f);
  const auto first = static_cast<std::size_t>(free_index(family));

  // Real amplitudes for alpha = r; the phase e^{i (n - first) theta} is attached afterwards.
  // They are kept as log|a_n| and a sign so that large r cannot overflow, then
  // rescaled by the largest one before the truncation test.
  std::vector<double> log_amp;
  std::vector<double> sign;
  const auto extend = [&] {
    const std::size_t n = log_amp.size();
    if (n < first) {
      log_amp.push_back(-std::numeric_limits<double>::infinity());
      sign.push_back(0.0);
    } else if (n == first) {
      log_amp.push_back(0.0);
      sign.push_back(1.0);
    } else {
      const double c = ladder_eigen_coefficient(static_cast<int>(n), f, system);
      if (c == 0.0 || !std::isfinite(c)) {
        throw ValidationError("ladder function '" + f.name() + "' gives c_" + std::to_string(n) +
                              " = " + std::to_string(c) + "; recurrence undefined");
      }
      const double step = alpha.r == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(alpha.r / std::abs(c));
      log_amp.push_back(log_amp[n - 1] + step);
      sign.push_back(c < 0.0 ? -sign[n - 1] : sign[n - 1]);
    }
  };

  // Locate the peak: walk until the weights are past it and far below the
  // truncation threshold.
  double log_peak = 0.0;
  const double stop = 2.0 * std::log(tol) - 50.0;
  for (std::size_t n = 0; n <= hard_cap + 1; ++n) {
    extend();
    log_peak = std::max(log_peak, log_amp[n]);
    if (n > first && log_amp[n] < log_amp[n - 1] && 2.0 * (log_amp[n] - log_peak) < stop) break;
  }

  std::vector<double> amplitude;
  const auto term = [&](std::size_t n) -> double {
    while (log_amp.size() <= n) extend();
    while (amplitude.size() <= n) {
      const std::size_t m = amplitude.size();
      amplitude.push_back(sign[m] == 0.0 ? 0.0 : sign[m] * std::exp(log_amp[m] - log_peak));
    }
    return amplitude[n] * amplitude[n];
  };
  const SeriesTruncation trunc = truncate_series(term, tol, hard_cap);
  if (!trunc.converged) {
    throw NumericalError("coherent expansion (family " + std::string(1, to_char(family)) +
                         ", r=" + std::to_string(alpha.r) + ") not converged within hard cap M=" +
                         std::to_string(hard_cap) + " at tol=" + short_number(tol));
  }

  CoherentExpansion out;
  out.family = family;
  out.system = system;
  out.alpha = alpha;
  out.ladder_name = f.name();
  out.truncation = trunc;
  out.tail = trunc.tail_bound;

  const std::size_t M = trunc.achieved_M;
  double weight = 0.0;
  for (std::size_t n = 0; n <= M; ++n) weight += amplitude[n] * amplitude[n];
  const double scale = 1.0 / std::sqrt(weight);
  out.norm_constant = std::exp(-log_peak) * scale;
  out.coefficients.resize(M + 1);
  for (std::size_t n = 0; n <= M; ++n) {
    const double phase =
        std::fmod((static_cast<double>(n) - static_cast<double>(first)) * alpha.theta, 2.0 * std::numbers::pi);
    out.coefficients[n] = std::polar(std::abs(amplitude[n]) * scale, phase) * (amplitude[n] < 0.0 ? -1.0 : 1.0);
  }
  return out;
}

std::vector<cplx> closed_form_coefficients(Family family, const LadderFunction& f, Alpha alpha,
                                           std::size_t M, System system) {
  check_family(family, f);
  const cplx a = alpha.value();
  const bool bilayer = system == System::bilayer;
  std::vector<cplx> c(M + 1);

  // alpha^s / (sqrt((s+shift)!) [f(s+shift)]!) accumulated as products of closed-form factors.
  const auto power = [&](std::size_t s) { return std::pow(a, static_cast<double>(s)); };
  switch (family) {
    case Family::A: {
      // a_n = sqrt2 alpha^n / (sqrt(n!) [f(n)]!), n >= 2; a_1 = alpha/f(1) (bilayer)
      double sqrt_fact = 1.0;
      double gen_fact = 1.0;
      c[0] = 1.0;
      for (std::size_t n = 1; n <= M; ++n) {
        sqrt_fact *= std::sqrt(static_cast<double>(n));
        gen_fact *= f(static_cast<int>(n));
        if (n == 1 && bilayer) {
          c[n] = a / f(1);
        } else {
          c[n] = std::numbers::sqrt2 * power(n) / (sqrt_fact * gen_fact);
        }
      }
      break;
    }
    case Family::B: {
      // a_{s+1} = [sqrt2] alpha^s / (sqrt((s+1)!) [g(s)]!), g(s) = f(s+1)
      const double lead = bilayer ? std::numbers::sqrt2 : 1.0;
      const auto g = [&](int s) { return f(s + 1); };
      if (M >= 1) c[1] = 1.0;
      for (std::size_t s = 1; s + 1 <= M; ++s) {
        const double sqrt_fact = std::exp(0.5 * std::lgamma(static_cast<double>(s) + 2.0));
        c[s + 1] = lead * power(s) / (sqrt_fact * generalized_factorial(g, static_cast<int>(s)));
      }
      break;
    }
    case Family::C: {
      // a_{s+2} = alpha^s / (sqrt((s+2)!) [h(s)]!), h(s) = f(s+2)
      const auto h = [&](int s) { return f(s + 2); };
      for (std::size_t s = 0; s + 2 <= M; ++s) {
        const double sqrt_fact = std::exp(0.5 * std::lgamma(static_cast<double>(s) + 3.0));
        c[s + 2] = power(s) / (sqrt_fact * generalized_factorial(h, static_cast<int>(s)));
      }
      break;
    }
  }
  double weight = 0.0;
  for (const auto& v : c) weight += std::norm(v);
  for (auto& v : c) v /= std::sqrt(weight);
  return c;
}

SpinorWavefunction realize(const CoherentExpansion& expansion, const PhysicalParams& params) {
  auto state = superpose(expansion.coefficients, expansion.system, params);
  state.upper.resize(state.upper.size() + 2);
  state.lower.resize(state.lower.size() + 2);
  return state;
}

double annihilation_residual(const CoherentExpansion& expansion, const LadderFunction& f) {
  const auto state = realize(expansion);
  const auto image = apply_ladder_down(state, f);
  const cplx alpha = expansion.alpha.value();
  double sum = 0.0;
  for (std::size_t m = 0; m < state.size(); ++m) {
    sum += std::norm(image.upper[m] - alpha * state.upper[m]);
    sum += std::norm(image.lower[m] - alpha * state.lower[m]);
  }
  return std::sqrt(sum);
}

double hypergeometric_0F2(double b1, double b2, double x) {
  const auto bad = [](double b) { return b <= 0.0 && b == std::floor(b); };
  if (bad(b1) || bad(b2) || !std::isfinite(b1) || !std::isfinite(b2)) {
    throw ValidationError("0F2: lower parameters must not be non-positive integers");
  }
  if (!(x >= 0.0) || !std::isfinite(x)) throw ValidationError("0F2: argument must be finite and >= 0");
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < 100000; ++n) {
    term *= x / ((b1 + n) * (b2 + n) * (n + 1.0));
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
  }
  throw NumericalError("0F2 series did not converge");
}

}  // namespace bgcs
