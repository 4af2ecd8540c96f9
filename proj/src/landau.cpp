#include "lptk/landau.hpp"

#include <cmath>

#include "lptk/errors.hpp"

namespace lptk {

namespace {

constexpr int kPadLevels = 50;
constexpr Eigen::Index kMaxLevelIndex = 4095;  // exact-multiple ceiling for the rounded gap

// Round x to `bits` significand bits so that small integer multiples stay exact.
double round_sig_bits(double x, int bits) {
  if (x == 0.0) return 0.0;
  int exp = 0;
  const double fr = std::frexp(x, &exp);            // |fr| in [0.5, 1)
  const double scaled = std::ldexp(fr, bits);       // in [2^(bits-1), 2^bits)
  return std::ldexp(std::nearbyint(scaled), exp - bits);
}

}  // namespace

double cyclotron_frequency(double B, const MaterialParams& m) {
  if (!(B >= 0.0)) throw ValidationError("cyclotron_frequency: B must be >= 0");
  return constants::e_charge * B / (constants::two_pi * m.m_star);
}

double filling_factor(double B, const MaterialParams& m) {
  if (!(B > 0.0)) throw ValidationError("filling_factor: B must be > 0");
  return constants::planck * m.n_s / (2.0 * constants::e_charge * B);
}

double magnetic_length(double B) {
  if (!(B > 0.0)) throw ValidationError("magnetic_length: B must be > 0");
  return std::sqrt(constants::hbar / (constants::e_charge * B));
}

double dipole_scale(double B, const MaterialParams& m) {
  return magnetic_length(B) * std::sqrt(filling_factor(B, m));
}

LandauSpectrum make_landau_spectrum(double B, const MaterialParams& m, double E_top) {
  if (!(B > 0.0)) throw ValidationError("make_landau_spectrum: B must be > 0");
  if (!(E_top >= 0.0) || !std::isfinite(E_top))
    throw ValidationError("make_landau_spectrum: E_top must be >= 0");

  const double omega_c = constants::e_charge * B / m.m_star;
  const double gap_raw = constants::hbar * omega_c;
  const Eigen::Index n_top = static_cast<Eigen::Index>(std::ceil(E_top / gap_raw));
  const Eigen::Index n_max = n_top + kPadLevels;
  if (n_max > kMaxLevelIndex)
    throw ValidationError("make_landau_spectrum: energy range needs more than 4095 levels");

  LandauSpectrum spec;
  spec.B = B;
  spec.f_c = omega_c / constants::two_pi;
  spec.gap = round_sig_bits(gap_raw, 40);
  spec.gamma = constants::hbar / m.tau_q;
  spec.level_energies.resize(n_max + 1);
  for (Eigen::Index n = 0; n <= n_max; ++n)
    spec.level_energies[n] = spec.gap * (static_cast<double>(n) + 0.5);
  return spec;
}

double dos_at_energy(double E, const LandauSpectrum& spec, const MaterialParams& /*m*/) {
  const Eigen::Index n_levels = spec.level_energies.size();
  if (n_levels < kPadLevels + 1)
    throw ValidationError("dos_at_energy: spectrum has too few levels");
  const double usable_top = spec.level_energies[n_levels - 1 - kPadLevels];
  if (E > usable_top)
    throw ValidationError("dos_at_energy: spectrum not padded up to this energy");

  const double g = spec.gamma / 2.0;  // Lorentzian HWHM
  double sum = 0.0;
  for (Eigen::Index n = 0; n < n_levels; ++n) {
    const double d = E - spec.level_energies[n];
    sum += g / (d * d + g * g);
  }

  // Levels above n_max, folded in analytically: Euler-Maclaurin for
  // sum_{n>n_max} g/((gap(n+1/2)-E)^2+g^2) = integral + f/2 - f'/12 at the
  // first omitted level.
  const double x = spec.gap * (static_cast<double>(n_levels) + 0.5) - E;  // > 0 by padding
  const double den = x * x + g * g;
  const double f_first = g / den;
  const double integral = (constants::pi / 2.0 - std::atan(x / g)) / spec.gap;
  const double deriv_term = spec.gap * x * g / (6.0 * den * den);
  sum += integral + 0.5 * f_first + deriv_term;

  const double degeneracy = 2.0 * constants::e_charge * spec.B / constants::planck;
  return degeneracy * sum / constants::pi;
}

double delocalized_weight(double nu) {
  const double r = nu - std::round(nu);  // in [-0.5, 0.5]
  const double s = std::sin(constants::pi * r);
  return s * s;
}

FermiState fermi_state(double B, const MaterialParams& m) {
  FermiState st;
  st.nu = filling_factor(B, m);
  const double omega_c = constants::e_charge * B / m.m_star;
  st.E_F = constants::hbar * omega_c * st.nu / 2.0;
  const double r = st.nu - std::round(st.nu);
  const double s = std::sin(constants::pi * r);
  const double c = std::cos(constants::pi * r);
  st.w_deloc = s * s;
  st.w_loc = c * c;
  return st;
}

}  // namespace lptk
