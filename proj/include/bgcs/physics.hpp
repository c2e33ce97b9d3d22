#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "bgcs/ladder_function.hpp"

namespace bgcs {

using cplx = std::complex<double>;

enum class System { bilayer, monolayer };
enum class Branch { positive, negative };

System parse_system(std::string_view name);
std::string_view to_string(System system);

/// Physical constants in one consistent unit system.
///
/// The oscillator parameter is tied to the cyclotron frequency by
/// omega = 2 m* omega_c / hbar.  Construction takes whichever pair of
/// (m*, omega) is natural for the caller and derives the other.  The
/// magnetic-field proxy uses e/(m* c) = 1, i.e. b_field == omega_c.
class PhysicalParams {
 public:
  /// hbar = 1, omega_c = 1, omega = 1, k = 1, v_F = 1 (hence m* = 1/2).
  PhysicalParams();

  /// Derives m* = hbar omega / (2 omega_c).
  static PhysicalParams from_oscillator(double hbar, double omega_c_star, double omega, double k,
                                        double v_fermi = 1.0);
  /// Derives omega = 2 m* omega_c / hbar.
  static PhysicalParams from_mass(double hbar, double m_star, double omega_c_star, double k,
                                  double v_fermi = 1.0);

  /// Same m*, hbar, k, v_F with omega_c set to the field proxy (omega follows).
  PhysicalParams with_field(double b_field) const;

  double hbar() const { return hbar_; }
  double m_star() const { return m_star_; }
  double omega_c_star() const { return omega_c_star_; }
  double omega() const { return omega_; }
  double k() const { return k_; }
  double v_fermi() const { return v_fermi_; }
  double b_field() const { return omega_c_star_; }

  /// Guiding-center position x0 = -2k/omega where xi = 0.
  double center() const { return -2.0 * k_ / omega_; }
  /// Oscillator coordinate xi = sqrt(omega/2) (x - x0).
  double xi(double x) const;

 private:
  void validate() const;

  double hbar_ = 1.0;
  double m_star_ = 0.5;
  double omega_c_star_ = 1.0;
  double omega_ = 1.0;
  double k_ = 1.0;
  double v_fermi_ = 1.0;
};

struct EigenstateLabel {
  int n = 0;
  Branch branch = Branch::positive;
};

/// Two-component state e^{iky} (upper(x), lower(x)) stored as coefficient
/// vectors over the oscillator functions psi_m, m = 0..size-1.  The e^{iky}
/// factor is carried symbolically; k lives in params.
struct SpinorWavefunction {
  std::vector<cplx> upper;
  std::vector<cplx> lower;
  System system = System::bilayer;
  PhysicalParams params;

  std::size_t size() const { return lower.size(); }
  double norm_squared() const;
};

SpinorWavefunction zero_spinor(std::size_t size, System system, const PhysicalParams& params);

/// <a|b>, zero-padding the shorter state.
cplx inner_product(const SpinorWavefunction& a, const SpinorWavefunction& b);

/// Index offset between the components of an excited eigenstate:
/// bilayer (psi_{n-2}, psi_n), monolayer (psi_{n-1}, psi_n).
int component_offset(System system);

// --- oscillator functions -------------------------------------------------

/// Normalized Hermite functions phi_0..phi_{out.size()-1} at xi, built with
/// the three-term recurrence and running exponent rescaling (no factorials,
/// no overflow for large n or |xi|).
void hermite_functions_xi(double xi, std::span<double> out);

/// psi_n(x) for n = 0..out.size()-1.
void hermite_functions(double x, const PhysicalParams& params, std::span<double> out);

double hermite_psi(int n, double x, const PhysicalParams& params);

/// d psi_n / dx = sqrt(n omega) psi_{n-1} - (omega x / 2 + k) psi_n.
double hermite_psi_derivative(int n, double x, const PhysicalParams& params);

// --- spectra --------------------------------------------------------------

double bilayer_energy(int n, Branch branch, const PhysicalParams& params);
double monolayer_energy(int n, Branch branch, const PhysicalParams& params);
double level_energy(System system, int n, Branch branch, const PhysicalParams& params);

// --- eigenstates and operators ---------------------------------------------

/// Eigenstate Psi_n in a basis of M+1 oscillator functions.  The negative
/// branch flips the sign of the lower component of the two-component states.
SpinorWavefunction build_eigenstate(EigenstateLabel label, std::size_t M,
                                    const PhysicalParams& params, System system);

/// sum_n a_n Psi_n (positive branch) in a basis just large enough to hold it.
SpinorWavefunction superpose(std::span<const cplx> eigen_coefficients, System system,
                             const PhysicalParams& params);

/// Deformed annihilation operator
///   A- = diag( sqrt(N+1+d)/sqrt(N+1) f(N+1+d) a-,  f(N+1) a- ),
/// d = component_offset(system).  On eigenstates A- Psi_n = c_n Psi_{n-1}.
SpinorWavefunction apply_ladder_down(const SpinorWavefunction& state, const LadderFunction& f);

/// Hermitian conjugate of apply_ladder_down.  The result has one more slot
/// than the input so the image is exact.
SpinorWavefunction apply_ladder_up(const SpinorWavefunction& state, const LadderFunction& f);

/// Effective Hamiltonian in ladder form, with b+- acting as the bosonic
/// ladder on the oscillator index:
///   bilayer   H = hbar omega_c  [[0, b-^2], [b+^2, 0]]
///   monolayer H = hbar v_F sqrt(omega) [[0, b-], [b+, 0]]
/// The result has two more slots than the input.
SpinorWavefunction apply_hamiltonian(const SpinorWavefunction& state);

/// c_n in A- Psi_n = c_n Psi_{n-1}.
double ladder_eigen_coefficient(int n, const LadderFunction& f, System system);

}  // namespace bgcs
