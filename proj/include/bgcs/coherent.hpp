#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "bgcs/ladder_function.hpp"
#include "bgcs/numerics.hpp"
#include "bgcs/physics.hpp"

namespace bgcs {

/// Which coefficient of the expansion is free:
///   A: f(1) != 0                  (a_0 free)
///   B: f(1) == 0, f(2) != 0       (a_1 free, a_0 = 0)
///   C: f(1) == f(2) == 0          (a_2 free, a_0 = a_1 = 0)
enum class Family { A, B, C };

Family parse_family(std::string_view name);
char to_char(Family family);
int free_index(Family family);
/// The ladder function each family is published with: unit, shift1, shift2.
LadderFunction default_ladder(Family family);

/// Eigenvalue alpha = r e^{i theta}, r >= 0, theta reduced to [0, 2 pi).
struct Alpha {
  double r = 0.0;
  double theta = 0.0;

  static Alpha polar(double r, double theta);
  static Alpha from_complex(cplx value);
  cplx value() const { return std::polar(r, theta); }
};

/// Normalized expansion Psi_alpha = sum_n a_n Psi_n, n = 0..M.
///
/// Phase convention: the free coefficient is real and positive before
/// normalization, so a_n = |a_n| e^{i (n - n0) theta}, n0 the free index, for the published ladder
/// functions (custom f with negative values contributes signs).
struct CoherentExpansion {
  Family family = Family::A;
  System system = System::bilayer;
  Alpha alpha;
  std::string ladder_name;
  std::vector<cplx> coefficients;
  /// 1 / sqrt(sum |a_n|^2) with the free coefficient set to one.
  double norm_constant = 1.0;
  /// Relative weight bound on the discarded terms n > M.
  double tail = 0.0;
  SeriesTruncation truncation;

  std::size_t M() const { return coefficients.size() - 1; }
};

inline constexpr std::size_t kCoherentHardCap = 4096;

/// Builds the expansion from the eigenvalue recurrence a_{n+1} = alpha a_n / c_{n+1},
/// with c_n from ladder_eigen_coefficient.  Throws ValidationError on a
/// family/f mismatch or tol outside (0, 1e-6], NumericalError when the series
/// has not converged by hard_cap.
CoherentExpansion build_coherent(Family family, const LadderFunction& f, Alpha alpha,
                                 double tol = 1e-12, System system = System::bilayer,
                                 std::size_t hard_cap = kCoherentHardCap);

/// Published closed form of the expansion coefficients for n = 0..M,
/// normalized numerically over the same range.  Independent of the
/// recurrence: powers of alpha over products of sqrt(n!) and [f(n)]!.
std::vector<cplx> closed_form_coefficients(Family family, const LadderFunction& f, Alpha alpha,
                                           std::size_t M, System system = System::bilayer);

/// Spinor realization with two guard slots above M.
SpinorWavefunction realize(const CoherentExpansion& expansion,
                           const PhysicalParams& params = PhysicalParams{});

/// || A- Psi_alpha - alpha Psi_alpha ||.
double annihilation_residual(const CoherentExpansion& expansion, const LadderFunction& f);

/// 0F2(;b1,b2;x) by direct summation of the term recurrence.
double hypergeometric_0F2(double b1, double b2, double x);

}  // namespace bgcs
