#include "lptk/transport.hpp"

#include <cmath>

#include "lptk/errors.hpp"
#include "lptk/landau.hpp"
#include "lptk/polariton.hpp"

namespace lptk {

double drude_rho0(const MaterialParams& m) {
  return 1.0 / (m.n_s * constants::e_charge * m.mu);
}

double cavity_scattering_rate(double B, const ResonatorParams& r, const MaterialParams& m) {
  if (!(B >= 0.0)) throw ValidationError("cavity_scattering_rate: B must be >= 0");
  const double omega = rabi_frequency(r);
  if (omega == 0.0) return 0.0;
  const double two_omega_sq = (2.0 * omega) * (2.0 * omega);
  const double detune = magneto_plasmon_frequency(B, r, m) - r.f_cav;
  const double kappa = cavity_linewidth(r);
  return (1.0 / r.tau_p) * two_omega_sq / (detune * detune + two_omega_sq + kappa * kappa);
}

double thermal_damping(double X) {
  if (X < 1e-6) return 1.0 - X * X / 6.0;
  return X / std::sinh(X);
}

double rho_xx_dark_at(double B, const ResonatorParams& r, const MaterialParams& m) {
  if (!(B > 0.0)) throw ValidationError("rho_xx_dark_at: B must be > 0");
  const double rho0 = drude_rho0(m);
  const double omega_c = constants::e_charge * B / m.m_star;
  const double X =
      2.0 * constants::pi * constants::pi * constants::boltzmann * m.T_el /
      (constants::hbar * omega_c);
  const double a_thermal = thermal_damping(X);
  const double inv_tau_eff = 1.0 / m.tau_q + cavity_scattering_rate(B, r, m);
  const double a_dingle = std::exp(-constants::pi * inv_tau_eff / omega_c);
  const double nu = filling_factor(B, m);
  const double rho =
      rho0 * (1.0 - 4.0 * a_thermal * a_dingle * std::cos(constants::two_pi * nu));
  return rho > 0.0 ? rho : 0.0;
}

TransportTrace rho_xx_dark(const Grid1D& b_axis, const ResonatorParams& r,
                           const MaterialParams& m) {
  if (!(b_axis.start > 0.0)) throw ValidationError("rho_xx_dark: b_axis must start above 0");
  validate(m);
  validate(r);
  TransportTrace trace;
  trace.b_axis = Grid1D(b_axis.start, b_axis.stop, b_axis.count);
  trace.material = m;
  trace.resonator = r;
  trace.eta_used = r.eta;
  trace.rho_xx.resize(b_axis.count);
  for (Eigen::Index i = 0; i < b_axis.count; ++i)
    trace.rho_xx[i] = rho_xx_dark_at(b_axis.sample(i), r, m);
  return trace;
}

}  // namespace lptk
