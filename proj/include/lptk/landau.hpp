#pragma once

#include <Eigen/Core>

#include "lptk/params.hpp"

namespace lptk {

// Cyclotron frequency f_c = e*B/(2*pi*m_star) [Hz]. Rejects B < 0.
double cyclotron_frequency(double B, const MaterialParams& m);

// Spin-degenerate filling factor nu = h*n_s/(2*e*B). Rejects B <= 0.
double filling_factor(double B, const MaterialParams& m);

// Magnetic length l0 = sqrt(hbar/(e*B)) [m]. Rejects B <= 0.
double magnetic_length(double B);

// Dipole length scale of delocalized states, l0*sqrt(nu) [m]; the charge factor
// e is reported separately by callers that want the dipole moment itself.
double dipole_scale(double B, const MaterialParams& m);

// Lorentzian-broadened Landau fan at one field.
//
// The stored level spacing `gap` is hbar*omega_c rounded to 40 significand bits
// (a relative change < 1.2e-12) so that every E_n = gap*(n + 1/2) up to
// n = 4095 is an exact multiple and adjacent level differences equal `gap`
// bit-for-bit.
struct LandauSpectrum {
  double B = 0;                   // field [T]
  double f_c = 0;                 // cyclotron frequency [Hz]
  double gap = 0;                 // level spacing hbar*omega_c [J] (see above)
  Eigen::ArrayXd level_energies;  // E_n = gap*(n + 1/2) [J], n = 0..n_max
  double gamma = 0;               // level full width Gamma = hbar/tau_q [J]
};

// Builds the fan with n_max = ceil(E_top/(hbar*omega_c)) + 50 levels of padding.
// Rejects B <= 0 and energy ranges that would need n_max > 4095.
LandauSpectrum make_landau_spectrum(double B, const MaterialParams& m, double E_top);

// Spin-degenerate density of states at energy E [states / (J m^2)]:
//   (2eB/h) * sum_n (1/pi) (Gamma/2) / ((E - E_n)^2 + (Gamma/2)^2).
// Levels above the stored fan are folded in through an analytic tail estimate
// (integral plus Euler-Maclaurin endpoint terms), keeping the truncation error
// below 1e-6 relative. Requires E at least 50 levels below the top of `spec`.
double dos_at_energy(double E, const LandauSpectrum& spec, const MaterialParams& m);

// Periodic localization weight sin^2(pi*nu): 1 at half-integer nu (Fermi level
// at a Landau-level center), 0 at integer nu. The argument is reduced to the
// nearest integer before the sine so both extremes are exact.
double delocalized_weight(double nu);

struct FermiState {
  double nu = 0;       // filling factor
  double E_F = 0;      // Fermi energy [J], fixed-density smooth model hbar*omega_c*nu/2
  double w_deloc = 0;  // delocalized weight
  double w_loc = 0;    // localized weight, cos^2(pi*nu)
};

FermiState fermi_state(double B, const MaterialParams& m);

}  // namespace lptk
