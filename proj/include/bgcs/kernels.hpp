#pragma once

#include <span>
#include <vector>

#include "bgcs/coherent.hpp"
#include "bgcs/observables.hpp"
#include "bgcs/physics.hpp"

// Data-parallel inner loops.  Every kernel has a plain serial reference and
// an OpenMP version over the same per-sample routine; results are identical
// sample by sample, so the reference doubles as the test oracle.

namespace bgcs::kernels {

struct ProfileSamples {
  std::vector<double> rho;
  std::vector<double> jx;
  std::vector<double> jy;
};

/// Generic density/current of a spinor at the abscissae xs.
ProfileSamples spinor_profile_serial(const SpinorWavefunction& state, std::span<const double> xs);
ProfileSamples spinor_profile_parallel(const SpinorWavefunction& state, std::span<const double> xs);

/// Published double series (bilayer, t = 0) truncated at expansion order M.
ProfileSamples closed_form_profile_serial(Family family, Alpha alpha, std::size_t M,
                                          const PhysicalParams& params, std::span<const double> xs);
ProfileSamples closed_form_profile_parallel(Family family, Alpha alpha, std::size_t M,
                                            const PhysicalParams& params,
                                            std::span<const double> xs);

struct SweepPoint {
  double r = 0.0;
  double theta = 0.0;
  ObservableReport moments;
};

/// Spectral moments over the Cartesian product rs x thetas (row-major in r).
std::vector<SweepPoint> uncertainty_sweep_serial(Family family, const LadderFunction& f,
                                                 System system, std::span<const double> rs,
                                                 std::span<const double> thetas, double tol);
std::vector<SweepPoint> uncertainty_sweep_parallel(Family family, const LadderFunction& f,
                                                   System system, std::span<const double> rs,
                                                   std::span<const double> thetas, double tol);

}  // namespace bgcs::kernels
