#pragma once

#include "lptk/constants.hpp"

namespace lptk {

// 2DEG material and Hall-bar geometry. SI units.
// Defaults describe a high-mobility GaAs/AlGaAs heterostructure at dilution
// temperatures: n_s = 3.3e11 cm^-2, mu = 3.1e6 cm^2/Vs, m* = 0.067 m_e.
struct MaterialParams {
  double n_s = 3.3e15;                            // sheet density [1/m^2]
  double m_star = 0.067 * constants::m_electron;  // effective mass [kg]
  double mu = 310.0;                              // mobility [m^2/(V s)]
  double tau_q = 5e-12;                           // quantum lifetime [s]
  double T_el = 0.1;                              // electron temperature [K]
  double W = 40e-6;                               // Hall-bar width [m]
  double L = 100e-6;                              // probe separation [m]

  friend bool operator==(const MaterialParams&, const MaterialParams&) = default;
};

// Sub-THz LC resonator coupled to the 2DEG. Frequencies are ordinary [Hz].
struct ResonatorParams {
  double f_cav = 205e9;    // bare cavity frequency [Hz]
  double Q = 5.0;          // quality factor
  double eta = 0.2;        // normalized coupling Omega/omega_cav
  double tau_p = 300e-12;  // cavity scattering time [s]
  double f_p = 60e9;       // magneto-plasmon zero-field frequency [Hz]

  friend bool operator==(const ResonatorParams&, const ResonatorParams&) = default;
};

// Throw ValidationError on out-of-range fields.
void validate(const MaterialParams& m);
void validate(const ResonatorParams& r);

// Drude transport lifetime tau_tr = mu * m_star / e [s].
double transport_lifetime(const MaterialParams& m);

// tau_tr >= tau_q is the usual ordering; a violation is allowed but worth a warning.
bool lifetime_ordering_ok(const MaterialParams& m);

// Cavity linewidth kappa = f_cav / Q [Hz].
double cavity_linewidth(const ResonatorParams& r);

// Rabi coupling in ordinary-frequency units, Omega_f = eta * f_cav [Hz].
double rabi_frequency(const ResonatorParams& r);

}  // namespace lptk
