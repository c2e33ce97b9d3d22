#include "bgcs/kernels.hpp"

#include <cmath>
#include <exception>

#include <omp.h>

namespace bgcs::kernels {

namespace {

struct PointValue {
  double rho;
  double jx;
  double jy;
};

// psi must hold state.size() slots.
PointValue spinor_point(const SpinorWavefunction& state, double x, std::span<double> psi) {
  const auto& p = state.params;
  hermite_functions(x, p, psi);
  const double omega = p.omega();
  const double k = p.k();
  const double shift = 0.5 * omega * x + k;

  cplx u{}, l{}, du{}, dl{};
  for (std::size_t m = 0; m < psi.size(); ++m) {
    const double d = (m > 0 ? std::sqrt(static_cast<double>(m) * omega) * psi[m - 1] : 0.0) - shift * psi[m];
    u += state.upper[m] * psi[m];
    l += state.lower[m] * psi[m];
    du += state.upper[m] * d;
    dl += state.lower[m] * d;
  }
  const cplx ul = std::conj(u) * l;
  const cplx u_dl = std::conj(u) * dl;
  const cplx l_du = std::conj(l) * du;
  return {std::norm(u) + std::norm(l),
          (u_dl + l_du).imag() + 2.0 * k * ul.imag(),
          l_du.real() - u_dl.real() - 2.0 * k * ul.real()};
}

ProfileSamples allocate(std::size_t n) {
  return {std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
}

void store(ProfileSamples& out, std::size_t i, PointValue v) {
  out.rho[i] = v.rho;
  out.jx[i] = v.jx;
  out.jy[i] = v.jy;
}

}  // namespace

ProfileSamples spinor_profile_serial(const SpinorWavefunction& state, std::span<const double> xs) {
  auto out = allocate(xs.size());
  std::vector<double> psi(state.size());
  for (std::size_t i = 0; i < xs.size(); ++i) store(out, i, spinor_point(state, xs[i], psi));
  return out;
}

ProfileSamples spinor_profile_parallel(const SpinorWavefunction& state, std::span<const double> xs) {
  auto out = allocate(xs.size());
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel
  {
    std::vector<double> psi(state.size());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      store(out, idx, spinor_point(state, xs[idx], psi));
    }
  }
  return out;
}

// --- closed-form series ------------------------------------------------------

namespace {

double log_factorial(double n) { return std::lgamma(n + 1.0); }

// r^n * exp(-log_denominator), with 0^0 = 1.
double scaled_power(double r, int n, double log_denominator) {
  if (r == 0.0) return n == 0 ? std::exp(-log_denominator) : 0.0;
  return std::exp(n * std::log(r) - log_denominator);
}

struct SeriesSetup {
  int first = 0;                 // lowest summation index
  int last = 0;                  // highest summation index
  std::vector<double> weight;    // w_n for n in [first, last], stored at [n]
  double normalization = 1.0;    // overall prefactor (1/N, 1/(2F))
};

SeriesSetup setup(Family family, double r, std::size_t M) {
  SeriesSetup s;
  const double r2 = r * r;
  switch (family) {
    case Family::A:
      s.first = 2;
      s.last = static_cast<int>(M);
      s.normalization = 1.0 / (2.0 * std::exp(r2) - r2 - 1.0);
      break;
    case Family::B:
      s.first = 1;
      s.last = static_cast<int>(M) - 1;
      s.normalization = 1.0 / (2.0 * std::exp(r2) - 1.0);
      break;
    case Family::C:
      s.first = 0;
      s.last = static_cast<int>(M) - 2;
      s.normalization = 1.0 / (2.0 * hypergeometric_0F2(1.0, 2.0, r2));
      break;
  }
  s.weight.assign(static_cast<std::size_t>(std::max(s.last, 0)) + 1, 0.0);
  for (int n = s.first; n <= s.last; ++n) {
    const double dn = n;
    double log_den = 0.0;
    if (family == Family::C) {
      log_den = log_factorial(dn) + 0.5 * log_factorial(dn + 1.0);  // n! sqrt((n+1)!)
    } else {
      log_den = 0.5 * log_factorial(dn);  // sqrt(n!)
    }
    s.weight[static_cast<std::size_t>(n)] = scaled_power(r, n, log_den);
  }
  return s;
}

constexpr double kCrossTermCutoff = 1e-16;

// Index-safe accessor: psi_{n} for n < 0 is never multiplied by a non-zero
// factor in the published series, but keep it at zero anyway.
struct Psi {
  std::span<const double> v;
  double operator[](int n) const { return n < 0 ? 0.0 : v[static_cast<std::size_t>(n)]; }
};

PointValue closed_form_point(Family family, double r, double theta, const SeriesSetup& s,
                             const PhysicalParams& p, double x, std::span<double> buffer) {
  hermite_functions(x, p, buffer);
  const Psi psi{buffer};
  const double w = p.omega();
  const double k = p.k();
  const double half_wx = 0.5 * w * x;
  const auto sq = [w](int n) { return std::sqrt(static_cast<double>(std::max(n, 0)) * w); };

  double rho = 0.0, jx = 0.0, jy = 0.0;
  switch (family) {
    case Family::A: {
      // Upper-component bracket for Psi_n, lower-component bracket for Psi_n.
      const auto up = [&](int n) { return sq(n - 2) * psi[n - 3] - (half_wx + 2.0 * k) * psi[n - 2]; };
      const auto lo = [&](int n) { return sq(n) * psi[n - 1] - half_wx * psi[n]; };
      for (int n = s.first; n <= s.last; ++n) {
        const double wn = s.weight[static_cast<std::size_t>(n)];
        for (int m = s.first; m <= s.last; ++m) {
          const double c = wn * s.weight[static_cast<std::size_t>(m)];
          if (c < kCrossTermCutoff) continue;
          const double rho_nm = psi[n - 2] * psi[m - 2] + psi[n] * psi[m];
          const double a = psi[m] * up(n);
          const double b = psi[m - 2] * lo(n);
          rho += c * std::cos((n - m) * theta) * rho_nm;
          jx += c * std::sin((n - m) * theta) * (a + b);
          jy += c * std::cos((n - m) * theta) * (a - b);
        }
      }
      // Psi_0 and Psi_1 enter the lower component only.
      rho += psi[0] * psi[0] + r * r * psi[1] * psi[1] + 2.0 * r * std::cos(theta) * psi[0] * psi[1];
      for (int n = s.first; n <= s.last; ++n) {
        const double wn = s.weight[static_cast<std::size_t>(n)];
        const double tn = n * theta;
        const double t1 = (n - 1) * theta;
        rho += 2.0 * wn * (std::cos(tn) * psi[0] + r * std::cos(t1) * psi[1]) * psi[n];
        jx += wn * up(n) * (psi[0] * std::sin(tn) + psi[1] * r * std::sin(t1));
        jy += wn * up(n) * (psi[0] * std::cos(tn) + psi[1] * r * std::cos(t1));
        jx -= wn * (std::sqrt(w) * psi[0] * psi[n - 2] * r * std::sin(t1) -
                    half_wx * psi[n - 2] * (psi[0] * std::sin(tn) + psi[1] * r * std::sin(t1)));
        jy -= wn * (std::sqrt(w) * psi[0] * psi[n - 2] * r * std::cos(t1) -
                    half_wx * psi[n - 2] * (psi[0] * std::cos(tn) + psi[1] * r * std::cos(t1)));
      }
      break;
    }
    case Family::B: {
      const auto up = [&](int n) { return sq(n - 1) * psi[n - 2] - (half_wx + 2.0 * k) * psi[n - 1]; };
      const auto lo = [&](int n) { return sq(n + 1) * psi[n] - half_wx * psi[n + 1]; };
      for (int n = s.first; n <= s.last; ++n) {
        const double wn = s.weight[static_cast<std::size_t>(n)];
        for (int m = s.first; m <= s.last; ++m) {
          const double c = wn * s.weight[static_cast<std::size_t>(m)];
          if (c < kCrossTermCutoff) continue;
          const double rho_nm = psi[n - 1] * psi[m - 1] + psi[n + 1] * psi[m + 1];
          const double a = psi[m + 1] * up(n);
          const double b = psi[m - 1] * lo(n);
          rho += c * std::cos((n - m) * theta) * rho_nm;
          jx += c * std::sin((n - m) * theta) * (a + b);
          jy += c * std::cos((n - m) * theta) * (a - b);
        }
      }
      rho += psi[1] * psi[1];
      for (int n = s.first; n <= s.last; ++n) {
        const double wn = s.weight[static_cast<std::size_t>(n)];
        const double tn = n * theta;
        rho += 2.0 * wn * std::cos(tn) * psi[1] * psi[n + 1];
        jx += wn * std::sin(tn) * psi[1] * up(n);
        jy += wn * std::cos(tn) * psi[1] * up(n);
        const double bracket = psi[n - 1] * (std::sqrt(w) * psi[0] - half_wx * psi[1]);
        jx -= wn * std::sin(tn) * bracket;
        jy -= wn * std::cos(tn) * bracket;
      }
      break;
    }
    case Family::C: {
      const auto up = [&](int n) { return sq(n) * psi[n - 1] - (half_wx + 2.0 * k) * psi[n]; };
      const auto lo = [&](int n) { return sq(n + 2) * psi[n + 1] - half_wx * psi[n + 2]; };
      for (int n = s.first; n <= s.last; ++n) {
        const double wn = s.weight[static_cast<std::size_t>(n)];
        for (int m = s.first; m <= s.last; ++m) {
          const double c = wn * s.weight[static_cast<std::size_t>(m)];
          if (c < kCrossTermCutoff) continue;
          const double rho_nm = psi[n] * psi[m] + psi[n + 2] * psi[m + 2];
          const double a = psi[m + 2] * up(n);
          const double b = psi[m] * lo(n);
          rho += c * std::cos((n - m) * theta) * rho_nm;
          jx += c * std::sin((n - m) * theta) * (a + b);
          jy += c * std::cos((n - m) * theta) * (a - b);
        }
      }
      break;
    }
  }
  return {rho * s.normalization, jx * s.normalization, jy * s.normalization};
}

}  // namespace

ProfileSamples closed_form_profile_serial(Family family, Alpha alpha, std::size_t M,
                                          const PhysicalParams& params, std::span<const double> xs) {
  const auto s = setup(family, alpha.r, M);
  auto out = allocate(xs.size());
  std::vector<double> psi(M + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    store(out, i, closed_form_point(family, alpha.r, alpha.theta, s, params, xs[i], psi));
  }
  return out;
}

ProfileSamples closed_form_profile_parallel(Family family, Alpha alpha, std::size_t M,
                                            const PhysicalParams& params,
                                            std::span<const double> xs) {
  const auto s = setup(family, alpha.r, M);
  auto out = allocate(xs.size());
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel
  {
    std::vector<double> psi(M + 1);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      store(out, idx, closed_form_point(family, alpha.r, alpha.theta, s, params, xs[idx], psi));
    }
  }
  return out;
}

// --- sweeps -------------------------------------------------------------------

namespace {
SweepPoint sweep_point(Family family, const LadderFunction& f, System system, double r,
                       double theta, double tol) {
  const auto expansion = build_coherent(family, f, Alpha::polar(r, theta), tol, system);
  return {r, theta, moments_spectral(expansion)};
}
}  // namespace

std::vector<SweepPoint> uncertainty_sweep_serial(Family family, const LadderFunction& f,
                                                 System system, std::span<const double> rs,
                                                 std::span<const double> thetas, double tol) {
  std::vector<SweepPoint> out;
  out.reserve(rs.size() * thetas.size());
  for (double r : rs) {
    for (double theta : thetas) out.push_back(sweep_point(family, f, system, r, theta, tol));
  }
  return out;
}

std::vector<SweepPoint> uncertainty_sweep_parallel(Family family, const LadderFunction& f,
                                                   System system, std::span<const double> rs,
                                                   std::span<const double> thetas, double tol) {
  const std::size_t nt = thetas.size();
  std::vector<SweepPoint> out(rs.size() * nt);
  std::exception_ptr failure;
  const auto total = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = sweep_point(family, f, system, rs[idx / nt], thetas[idx % nt], tol);
    } catch (...) {
#pragma omp critical(bgcs_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace bgcs::kernels
