#pragma once

#include <vector>

#include "bgcs/coherent.hpp"
#include "bgcs/numerics.hpp"
#include "bgcs/physics.hpp"

namespace bgcs {

/// Dimensionless moments of q = (a+ + a-)/sqrt2 and p = i(a+ - a-)/sqrt2.
struct ObservableReport {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double mean_q2 = 0.0;
  double mean_p2 = 0.0;
  double sigma_q = 0.0;
  double sigma_p = 0.0;
  double product = 0.0;
};

/// Operator route: matrix elements of a-, a-^2 and N on each spinor
/// component.  Throws NumericalError when the top two basis slots carry more
/// than 1e-8 of the weight (the truncated operators would be wrong there).
ObservableReport moments_spectral(const SpinorWavefunction& state);
ObservableReport moments_spectral(const CoherentExpansion& expansion);

/// Published series for (A, unit), (B, shift1), (C, shift2) on the bilayer.
ObservableReport moments_closed_form(Family family, Alpha alpha);

/// Published mean-energy series (bilayer) and the matching series for the
/// monolayer expansions, for the published ladder function of each family.
double mean_energy(Family family, Alpha alpha, const PhysicalParams& params, System system);

/// sum |a_n|^2 E_n over the positive branch.
double mean_energy_generic(const CoherentExpansion& expansion, const PhysicalParams& params);

enum class ProfileMode { generic, closed_form };
enum class Execution { serial, parallel };

/// Samples of rho(x) and of the currents in units of hbar/m*, i.e. the
/// columns hold (m*/hbar) J_x and (m*/hbar) J_y.
struct FieldProfile {
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> jx;
  std::vector<double> jy;
  GridSpec grid;
  Family family = Family::A;
  Alpha alpha;
  double t = 0.0;
  System system = System::bilayer;
  PhysicalParams params;
};

/// Density and current profile at time t.
///
/// generic: rho = |u|^2 + |l|^2 and J_l = Im[Psi^dag j_l Psi] with
///   j_x = sigma_x d/dx + sigma_y d/dy,  j_y = sigma_y d/dx - sigma_x d/dy,
///   d/dy -> ik, which works out to
///   J_x = Im(u* l' + l* u') + 2k Im(u* l)
///   J_y = Re(l* u') - Re(u* l') - 2k Re(u* l).
/// closed_form: the published double series (bilayer, t = 0, published f).
///
/// The grid must cover x0 -+ 8/sqrt(omega); a generic profile whose
/// integrated density misses more than 1e-6 is rejected as too narrow.
FieldProfile field_profile(const CoherentExpansion& expansion, const PhysicalParams& params,
                           const GridSpec& grid, double t = 0.0,
                           ProfileMode mode = ProfileMode::generic,
                           Execution exec = Execution::parallel);

/// Same as the generic mode for an arbitrary spinor (no grid-mass check).
FieldProfile field_profile(const SpinorWavefunction& state, const GridSpec& grid,
                           Execution exec = Execution::parallel);

/// Trapezoid integral of rho over the profile's abscissae.
double integrate_profile(const FieldProfile& profile);

}  // namespace bgcs
