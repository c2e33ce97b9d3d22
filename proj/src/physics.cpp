#include "bgcs/physics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "bgcs/errors.hpp"

namespace bgcs {

System parse_system(std::string_view name) {
  if (name == "bilayer") return System::bilayer;
  if (name == "monolayer") return System::monolayer;
  throw ValidationError("unknown system '" + std::string(name) + "' (expected bilayer or monolayer)");
}

std::string_view to_string(System system) {
  return system == System::bilayer ? "bilayer" : "monolayer";
}

// ---------------------------------------------------------------------------

PhysicalParams::PhysicalParams() { validate(); }

PhysicalParams PhysicalParams::from_oscillator(double hbar, double omega_c_star, double omega,
                                               double k, double v_fermi) {
  PhysicalParams p;
  p.hbar_ = hbar;
  p.omega_c_star_ = omega_c_star;
  p.omega_ = omega;
  p.m_star_ = hbar * omega / (2.0 * omega_c_star);
  p.k_ = k;
  p.v_fermi_ = v_fermi;
  p.validate();
  return p;
}

PhysicalParams PhysicalParams::from_mass(double hbar, double m_star, double omega_c_star, double k,
                                         double v_fermi) {
  PhysicalParams p;
  p.hbar_ = hbar;
  p.m_star_ = m_star;
  p.omega_c_star_ = omega_c_star;
  p.omega_ = 2.0 * m_star * omega_c_star / hbar;
  p.k_ = k;
  p.v_fermi_ = v_fermi;
  p.validate();
  return p;
}

PhysicalParams PhysicalParams::with_field(double b_field) const {
  return from_mass(hbar_, m_star_, b_field, k_, v_fermi_);
}

double PhysicalParams::xi(double x) const { return std::sqrt(omega_ / 2.0) * (x - center()); }

void PhysicalParams::validate() const {
  const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(hbar_) || !positive(m_star_) || !positive(omega_c_star_) || !positive(omega_)) {
    throw ValidationError("physical parameters hbar, m*, omega_c and omega must be positive and finite");
  }
  if (!std::isfinite(k_) || !std::isfinite(v_fermi_) || v_fermi_ < 0.0) {
    throw ValidationError("k must be finite and v_F finite and non-negative");
  }
  const double implied = 2.0 * m_star_ * omega_c_star_ / hbar_;
  if (std::abs(implied - omega_) > 8.0 * std::numeric_limits<double>::epsilon() * omega_) {
    throw ValidationError("inconsistent parameters: omega != 2 m* omega_c / hbar");
  }
}

// ---------------------------------------------------------------------------

double SpinorWavefunction::norm_squared() const {
  double sum = 0.0;
  for (const auto& c : upper) sum += std::norm(c);
  for (const auto& c : lower) sum += std::norm(c);
  return sum;
}

SpinorWavefunction zero_spinor(std::size_t size, System system, const PhysicalParams& params) {
  return {std::vector<cplx>(size), std::vector<cplx>(size), system, params};
}

cplx inner_product(const SpinorWavefunction& a, const SpinorWavefunction& b) {
  cplx sum{};
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t m = 0; m < n; ++m) {
    sum += std::conj(a.upper[m]) * b.upper[m] + std::conj(a.lower[m]) * b.lower[m];
  }
  return sum;
}

int component_offset(System system) { return system == System::bilayer ? 2 : 1; }

// ---------------------------------------------------------------------------

void hermite_functions_xi(double xi, std::span<double> out) {
  if (!std::isfinite(xi)) throw ValidationError("hermite functions need a finite argument");
  if (out.empty()) return;

  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  const double norm0 = std::pow(std::numbers::pi, -0.25);

  // phi_n = norm0 * p_n * exp(log_scale); p_0 = 1
  double log_scale = -0.5 * xi * xi;
  double factor = norm0 * std::exp(log_scale);
  double prev = 0.0;
  double curr = 1.0;
  out[0] = factor * curr;
  for (std::size_t n = 0; n + 1 < out.size(); ++n) {
    const double dn = static_cast<double>(n);
    const double next = std::sqrt(2.0 / (dn + 1.0)) * xi * curr - std::sqrt(dn / (dn + 1.0)) * prev;
    prev = curr;
    curr = next;
    if (std::abs(curr) > kBig) {
      prev /= kBig;
      curr /= kBig;
      log_scale += log_big;
      factor = norm0 * std::exp(log_scale);
    }
    out[n + 1] = factor * curr;
  }
}

void hermite_functions(double x, const PhysicalParams& params, std::span<double> out) {
  if (!std::isfinite(x)) throw ValidationError("hermite functions need a finite argument");
  hermite_functions_xi(params.xi(x), out);
  const double scale = std::pow(params.omega() / 2.0, 0.25);
  for (auto& v : out) v *= scale;
}

double hermite_psi(int n, double x, const PhysicalParams& params) {
  if (n < 0) throw ValidationError("hermite_psi: negative index");
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  hermite_functions(x, params, values);
  return values.back();
}

double hermite_psi_derivative(int n, double x, const PhysicalParams& params) {
  if (n < 0) throw ValidationError("hermite_psi_derivative: negative index");
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  hermite_functions(x, params, values);
  const double omega = params.omega();
  const double lowered = n > 0 ? std::sqrt(n * omega) * values[static_cast<std::size_t>(n) - 1] : 0.0;
  return lowered - (0.5 * omega * x + params.k()) * values.back();
}

// ---------------------------------------------------------------------------

namespace {
double signed_of(Branch branch, double magnitude) {
  return branch == Branch::positive ? magnitude : -magnitude;
}
void require_level(int n) {
  if (n < 0) throw ValidationError("Landau level index must be non-negative");
}
}  // namespace

double bilayer_energy(int n, Branch branch, const PhysicalParams& params) {
  require_level(n);
  if (n < 2) return 0.0;
  const double dn = static_cast<double>(n);
  return signed_of(branch, params.hbar() * params.omega_c_star() * std::sqrt(dn * (dn - 1.0)));
}

double monolayer_energy(int n, Branch branch, const PhysicalParams& params) {
  require_level(n);
  return signed_of(branch, params.hbar() * params.v_fermi() * std::sqrt(n * params.omega()));
}

double level_energy(System system, int n, Branch branch, const PhysicalParams& params) {
  return system == System::bilayer ? bilayer_energy(n, branch, params)
                                   : monolayer_energy(n, branch, params);
}

// ---------------------------------------------------------------------------

SpinorWavefunction build_eigenstate(EigenstateLabel label, std::size_t M,
                                    const PhysicalParams& params, System system) {
  require_level(label.n);
  const auto n = static_cast<std::size_t>(label.n);
  if (M < n) {
    throw NumericalError("truncation M=" + std::to_string(M) + " cannot hold eigenstate n=" +
                         std::to_string(n));
  }
  auto state = zero_spinor(M + 1, system, params);
  const auto d = static_cast<std::size_t>(component_offset(system));
  if (n < d) {
    state.lower[n] = 1.0;
    return state;
  }
  const double s = std::numbers::sqrt2 / 2.0;
  state.upper[n - d] = s;
  state.lower[n] = label.branch == Branch::positive ? s : -s;
  return state;
}

SpinorWavefunction superpose(std::span<const cplx> eigen_coefficients, System system,
                             const PhysicalParams& params) {
  auto state = zero_spinor(std::max<std::size_t>(eigen_coefficients.size(), 1), system, params);
  const auto d = static_cast<std::size_t>(component_offset(system));
  const double s = std::numbers::sqrt2 / 2.0;
  for (std::size_t n = 0; n < eigen_coefficients.size(); ++n) {
    const cplx a = eigen_coefficients[n];
    if (n < d) {
      state.lower[n] += a;
    } else {
      state.upper[n - d] += s * a;
      state.lower[n] += s * a;
    }
  }
  return state;
}

SpinorWavefunction apply_ladder_down(const SpinorWavefunction& state, const LadderFunction& f) {
  auto out = zero_spinor(state.size(), state.system, state.params);
  const int d = component_offset(state.system);
  for (std::size_t m = 1; m < state.size(); ++m) {
    const int mi = static_cast<int>(m);
    out.upper[m - 1] = std::sqrt(static_cast<double>(mi + d)) * f(mi + d) * state.upper[m];
    out.lower[m - 1] = std::sqrt(static_cast<double>(mi)) * f(mi) * state.lower[m];
  }
  return out;
}

SpinorWavefunction apply_ladder_up(const SpinorWavefunction& state, const LadderFunction& f) {
  auto out = zero_spinor(state.size() + 1, state.system, state.params);
  const int d = component_offset(state.system);
  for (std::size_t m = 0; m < state.size(); ++m) {
    const int mi = static_cast<int>(m);
    out.upper[m + 1] = std::sqrt(static_cast<double>(mi + 1 + d)) * f(mi + 1 + d) * state.upper[m];
    out.lower[m + 1] = std::sqrt(static_cast<double>(mi + 1)) * f(mi + 1) * state.lower[m];
  }
  return out;
}

SpinorWavefunction apply_hamiltonian(const SpinorWavefunction& state) {
  const auto& p = state.params;
  auto out = zero_spinor(state.size() + 2, state.system, p);
  const auto sq = [](std::size_t m) { return std::sqrt(static_cast<double>(m)); };
  if (state.system == System::bilayer) {
    const double scale = p.hbar() * p.omega_c_star();
    for (std::size_t m = 0; m < state.size(); ++m) {
      if (m >= 2) out.upper[m - 2] += scale * sq(m) * sq(m - 1) * state.lower[m];
      out.lower[m + 2] += scale * sq(m + 1) * sq(m + 2) * state.upper[m];
    }
  } else {
    const double scale = p.hbar() * p.v_fermi() * std::sqrt(p.omega());
    for (std::size_t m = 0; m < state.size(); ++m) {
      if (m >= 1) out.upper[m - 1] += scale * sq(m) * state.lower[m];
      out.lower[m + 1] += scale * sq(m + 1) * state.upper[m];
    }
  }
  return out;
}

double ladder_eigen_coefficient(int n, const LadderFunction& f, System system) {
  require_level(n);
  if (n == 0) return 0.0;
  const double base = std::sqrt(static_cast<double>(n)) * f(n);
  // Psi_d is the first two-component state; its image Psi_{d-1} is single-component.
  return n == component_offset(system) ? base / std::numbers::sqrt2 : base;
}

}  // namespace bgcs
