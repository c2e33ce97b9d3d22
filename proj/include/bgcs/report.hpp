#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bgcs/coherent.hpp"
#include "bgcs/numerics.hpp"
#include "bgcs/physics.hpp"

namespace bgcs {

/// Everything a subcommand needs.  Empty sweep lists mean "use the
/// subcommand's default sweep".
struct RunConfig {
  System system = System::bilayer;
  Family family = Family::A;
  std::string ladder;  // empty: the family's published ladder function
  std::vector<double> r;
  std::vector<double> theta;
  double hbar = 1.0;
  double omega_c = 1.0;
  double omega = 1.0;
  double k = 1.0;
  double vf = 1.0;
  std::vector<double> b_field;
  GridSpec grid;
  std::vector<double> times;
  double tol = 1e-12;
  int n_max = 10;
  std::string out;

  PhysicalParams params() const;
  LadderFunction ladder_function() const;
  void validate() const;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
  /// Comma-separated, header first, every value with 17 significant digits.
  void write(std::ostream& os) const;
  std::string str() const;
};

/// n, E_n, E_{n+1} - E_n for n = 0..n_max.
Table cmd_spectrum(const RunConfig& config);
/// n, Re a_n, Im a_n, |a_n|^2 for the first (r, theta).
Table cmd_coherent(const RunConfig& config);
/// r, theta, <q>, <p>, <q^2>, <p^2>, sigma_q sigma_p.
Table cmd_uncertainty(const RunConfig& config);
/// theta, x, rho, Jx m*/hbar, Jy m*/hbar for each theta (default 0, pi/4, pi/2).
Table cmd_profile(const RunConfig& config);
/// x, t, rho for each time (default 0, 2 pi, 4 pi).
Table cmd_evolve(const RunConfig& config);
/// b_field, r, <H> for each field (default 1/4, 1/6, 1/8).
Table cmd_energy(const RunConfig& config);
/// <H>, E_j, E_{j+1}, tau, tau/pi, revival distance between rho(0) and rho(tau).
Table cmd_period(const RunConfig& config);

}  // namespace bgcs
