// bgcs: coherent states of electrons in bilayer and monolayer graphene in a
// magnetic field.  Every subcommand writes a CSV table; see README.md.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bgcs/errors.hpp"
#include "bgcs/regress.hpp"
#include "bgcs/report.hpp"

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitRegression = 3;

int emit(const bgcs::Table& table, const std::string& path) {
  if (path.empty() || path == "-") {
    table.write(std::cout);
    return 0;
  }
  std::ofstream out(path);
  if (!out) throw bgcs::ValidationError("cannot open output file '" + path + "'");
  table.write(out);
  if (!out) throw bgcs::ValidationError("failed writing '" + path + "'");
  return 0;
}

int regress(double perturb) {
  const auto results = bgcs::run_regression({perturb});
  for (const auto& r : results) {
    const char* tag = !r.asserted ? "INFO" : (r.passed ? "PASS" : "FAIL");
    std::printf("%s  %s  measured=%.6g", tag, r.name.c_str(), r.measured);
    if (r.asserted) std::printf(" threshold=%.3g", r.threshold);
    if (!r.detail.empty()) std::printf("  [%s]", r.detail.c_str());
    std::printf("\n");
  }
  const bool ok = bgcs::all_passed(results);
  std::printf("%s\n", ok ? "regression: all checks passed" : "regression: FAILED");
  return ok ? 0 : kExitRegression;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent states for electrons in bilayer and monolayer graphene"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file with option defaults (flags win)");

  bgcs::RunConfig cfg;
  std::string system = "bilayer";
  std::string family = "A";
  double grid_min = cfg.grid.x_min;
  double grid_max = cfg.grid.x_max;
  std::size_t grid_points = cfg.grid.points;
  double perturb = 0.0;

  app.add_option("--system", system, "bilayer or monolayer")->check(CLI::IsMember({"bilayer", "monolayer"}));
  app.add_option("--family", family, "coherent-state family")->check(CLI::IsMember({"A", "B", "C"}));
  app.add_option("--f", cfg.ladder, "ladder function: unit, shift1 or shift2 (default: the family's own)");
  app.add_option("--r", cfg.r, "|alpha| values")->delimiter(',');
  app.add_option("--theta", cfg.theta, "arg(alpha) values")->delimiter(',');
  app.add_option("--omega-c", cfg.omega_c, "effective cyclotron frequency");
  app.add_option("--omega", cfg.omega, "oscillator frequency 2 m* omega_c / hbar");
  app.add_option("--k", cfg.k, "wave number along y");
  app.add_option("--vf", cfg.vf, "Fermi velocity");
  app.add_option("--b-field", cfg.b_field, "magnetic field values (omega_c = B at fixed m*)")->delimiter(',');
  app.add_option("--grid-min", grid_min, "left end of the x grid");
  app.add_option("--grid-max", grid_max, "right end of the x grid");
  app.add_option("--grid-points", grid_points, "number of grid points (>= 16)");
  app.add_option("--times", cfg.times, "evolution times")->delimiter(',');
  app.add_option("--tol", cfg.tol, "coherent-series tail tolerance");
  app.add_option("--n-max", cfg.n_max, "highest level for spectrum");
  app.add_option("--out", cfg.out, "output CSV path (default stdout)");

  const char* names[][2] = {{"spectrum", "Landau levels and gaps"},
                            {"coherent", "expansion coefficients"},
                            {"uncertainty", "moments and uncertainty product over an (r, theta) sweep"},
                            {"profile", "density and currents"},
                            {"evolve", "density at several times"},
                            {"energy", "mean energy against r for several fields"},
                            {"period", "quasi-period and revival distance"},
                            {"regress", "run the regression checks"}};
  for (const auto& n : names) app.add_subcommand(n[0], n[1])->fallthrough();
  app.get_subcommand("regress")
      ->add_option("--perturb", perturb, "relative perturbation of one closed-form coefficient");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    cfg.system = bgcs::parse_system(system);
    cfg.family = bgcs::parse_family(family);
    cfg.grid.x_min = grid_min;
    cfg.grid.x_max = grid_max;
    cfg.grid.points = grid_points;

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "regress") return regress(perturb);
    if (cmd == "spectrum") return emit(bgcs::cmd_spectrum(cfg), cfg.out);
    if (cmd == "coherent") return emit(bgcs::cmd_coherent(cfg), cfg.out);
    if (cmd == "uncertainty") return emit(bgcs::cmd_uncertainty(cfg), cfg.out);
    if (cmd == "profile") return emit(bgcs::cmd_profile(cfg), cfg.out);
    if (cmd == "evolve") return emit(bgcs::cmd_evolve(cfg), cfg.out);
    if (cmd == "energy") return emit(bgcs::cmd_energy(cfg), cfg.out);
    if (cmd == "period") return emit(bgcs::cmd_period(cfg), cfg.out);
  } catch (const bgcs::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const bgcs::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}
