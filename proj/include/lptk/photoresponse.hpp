#pragma once

#include <vector>

#include "lptk/polariton.hpp"

namespace lptk {

// Amplitudes of the two photo-response channels [Ohm per unit normalized power].
struct PhotoResponseParams {
  double A_pol = -2.0;     // polariton-channel amplitude, negative
  double A_1 = 1.0;        // fundamental inter-Landau-level amplitude
  double A_hi = 0.3;       // higher-harmonic amplitude, 0 < A_hi <= A_1
  int n_max_harmonic = 5;  // highest inter-LL harmonic synthesized
  double gamma_LL = 10e9;  // inter-LL line half-width [Hz]
};

void validate(const PhotoResponseParams& p);

// Polariton channel: sum_j A_pol * w_mat_j * L(f - f_j; kappa_j/2). The matter
// fraction gates the branch response; photon-dominated segments respond weakly.
double polariton_response_at(double B, double f, PolaritonModelKind kind,
                             const ResonatorParams& r, const MaterialParams& m,
                             const PhotoResponseParams& p);

// Localized channel: sum_{n=1..n_max} A_n * L(f - n f_c; gamma_LL) with
// A_1 = p.A_1 and A_n = p.A_hi for n >= 2.
double harmonic_response_at(double B, double f, const MaterialParams& m,
                            const PhotoResponseParams& p);

// Full photo-response R(B,f) = w_deloc(nu) * polariton + w_loc(nu) * harmonic.
// The two channels are gated by the filling factor: at exact half-integer nu
// only the polariton term survives, at exact integer nu only the harmonic one.
double photoresponse_at(double B, double f, PolaritonModelKind kind, const ResonatorParams& r,
                        const MaterialParams& m, const PhotoResponseParams& p);

ResponseMap photoresponse_map(const Grid1D& b_axis, const Grid1D& f_axis,
                              PolaritonModelKind kind, const ResonatorParams& r,
                              const MaterialParams& m, const PhotoResponseParams& p);

enum class FillingSelect { Integer, HalfInteger };

// Keeps the B columns within tol (in filling factor) of the selected class and
// rebuilds everything else by linear interpolation in B between retained
// columns (clamped at the ends). Throws ValidationError when no column matches
// or when the B axis spans fewer than two integer filling factors.
ResponseMap slice_by_filling(const ResponseMap& map, const MaterialParams& m,
                             FillingSelect which, double tol);

enum class Branch { LP, UP };

// Field/frequency pair where a polariton branch is resonant with an inter-LL
// harmonic: f_branch(B*) = n * f_c(B*).
struct DecayLocus {
  int n = 2;
  Branch branch = Branch::LP;
  double B_star = 0;  // [T]
  double f_star = 0;  // [Hz]
};

// All solutions of f_branch(B) = n f_c(B) for n in [n_min, n_max] and both
// branches, located by sign-change bracketing on a scan grid plus bisection to
// 1e-10 relative in B. Sorted by B_star, then n. Requires n_min >= 2 (n = 1 is
// the trivial tangency of the matter-like branch with the cyclotron line).
std::vector<DecayLocus> decay_loci(PolaritonModelKind kind, const ResonatorParams& r,
                                   const MaterialParams& m, int n_min, int n_max, double B_lo,
                                   double B_hi, int scan_points = 20000);

// Steady-state polariton count under continuous drive,
//   N = absorbed_fraction * P_irr * tau_pol / (hbar * omega_cav),
// with tau_pol = Q/omega_cav, i.e. N = a P Q / (hbar omega_cav^2).
double estimate_polariton_population(double P_irr, const ResonatorParams& r,
                                     double absorbed_fraction = 1.0);

}  // namespace lptk
