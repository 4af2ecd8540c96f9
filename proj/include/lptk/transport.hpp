#pragma once

#include <Eigen/Core>

#include "lptk/grid.hpp"
#include "lptk/params.hpp"

namespace lptk {

// Dark longitudinal resistivity trace with the parameters it was computed from.
struct TransportTrace {
  Grid1D b_axis;
  Eigen::ArrayXd rho_xx;  // [Ohm/sq], same length as b_axis.count
  MaterialParams material;
  ResonatorParams resonator;
  double eta_used = 0;

  friend bool operator==(const TransportTrace& a, const TransportTrace& b) {
    return a.b_axis == b.b_axis && a.rho_xx.size() == b.rho_xx.size() &&
           (a.rho_xx == b.rho_xx).all() && a.material == b.material &&
           a.resonator == b.resonator && a.eta_used == b.eta_used;
  }
};

// Zero-field Drude sheet resistivity rho0 = 1/(n_s e mu) [Ohm/sq].
double drude_rho0(const MaterialParams& m);

// Phenomenological cavity-vacuum scattering channel [1/s], resonance weighted:
//   1/tau_cav = (1/tau_p) (2 Omega_f)^2 / ((f_mp - f_cav)^2 + (2 Omega_f)^2 + kappa^2)
// with Omega_f = eta f_cav and kappa = f_cav/Q. Identically zero at eta = 0,
// maximal at the anti-crossing.
double cavity_scattering_rate(double B, const ResonatorParams& r, const MaterialParams& m);

// X/sinh(X), with the X -> 0 limit handled by series.
double thermal_damping(double X);

// First-harmonic Shubnikov-de Haas resistivity at one field:
//   rho_xx = rho0 [1 - 4 A_T A_D cos(2 pi nu)],
// A_T = X/sinh X with X = 2 pi^2 kB T_el/(hbar omega_c), and the Dingle factor
// A_D = exp(-pi/(omega_c tau_eff)) with 1/tau_eff = 1/tau_q + 1/tau_cav(B).
// Minima fall on integer nu, maxima near half-integer nu. Clipped at zero.
// Rejects B <= 0.
double rho_xx_dark_at(double B, const ResonatorParams& r, const MaterialParams& m);

TransportTrace rho_xx_dark(const Grid1D& b_axis, const ResonatorParams& r,
                           const MaterialParams& m);

}  // namespace lptk
