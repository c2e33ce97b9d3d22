#pragma once

#include <span>
#include <vector>

#include "bgcs/coherent.hpp"
#include "bgcs/observables.hpp"

namespace bgcs {

/// Coefficients a_n e^{-i E_n t / hbar}, E_n on the positive branch.
struct EvolvedExpansion {
  CoherentExpansion base;
  double t = 0.0;
  std::vector<cplx> phases;
  System system = System::bilayer;

  std::vector<cplx> coefficients() const;
  double norm() const;
};

/// Phases are taken from E_n t / hbar reduced mod 2 pi before exponentiation,
/// so that large t does not lose the unit modulus.
EvolvedExpansion evolve(const CoherentExpansion& expansion, double t, const PhysicalParams& params);
EvolvedExpansion evolve(const EvolvedExpansion& state, double dt, const PhysicalParams& params);

SpinorWavefunction realize_evolved(const EvolvedExpansion& state, const PhysicalParams& params);

struct PeriodEstimate {
  double mean_energy = 0.0;
  double lower_level = 0.0;
  double upper_level = 0.0;
  double tau = 0.0;
};

inline constexpr int kPeriodScanCap = 1 << 20;

/// tau = 2 pi hbar / (E_{j+1} - E_j) for the consecutive distinct levels that
/// bound the mean energy.  The degenerate bilayer zero level counts once.
PeriodEstimate bounding_period(double mean_energy, System system, const PhysicalParams& params);

/// With the published mean-energy series of the family.
PeriodEstimate quasi_period(Family family, Alpha alpha, System system, const PhysicalParams& params);

/// With <H> summed over the expansion (any ladder function).
PeriodEstimate quasi_period(const CoherentExpansion& expansion, const PhysicalParams& params);

/// ||rho(t_b) - rho(t_a)|| / ||rho(t_a)|| in L2 over the grid.
double revival_distance(const CoherentExpansion& expansion, const PhysicalParams& params,
                        const GridSpec& grid, double t_a, double t_b);

/// max |a - b| / max a over matching samples.
double peak_relative_difference(std::span<const double> a, std::span<const double> b);

/// Density profiles at each time (sorted, non-negative).
std::vector<FieldProfile> density_movie(const CoherentExpansion& expansion, const PhysicalParams& params,
                                        const GridSpec& grid, std::span<const double> times,
                                        Execution exec = Execution::parallel);

/// Diagnostic of d rho/dt + (hbar/m*) dJx/dx = 0 at time t by central
/// differences (step dt in time, the grid spacing in x).  Returns the largest
/// residual over the grid divided by the largest |d rho/dt|.
double continuity_residual(const CoherentExpansion& expansion, const PhysicalParams& params,
                           const GridSpec& grid, double t, double dt = 1e-4);

}  // namespace bgcs
