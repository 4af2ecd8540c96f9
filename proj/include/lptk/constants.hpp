#pragma once

// Fundamental constants, CODATA-2018 exact/recommended values. SI units throughout
// the library; frequencies are ordinary frequencies [Hz] unless a variable is
// explicitly named omega (angular, [rad/s]).

#include <numbers>

namespace lptk {
namespace constants {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

inline constexpr double e_charge = 1.602176634e-19;     // elementary charge [C] (exact)
inline constexpr double planck = 6.62607015e-34;        // Planck constant [J s] (exact)
inline constexpr double hbar = planck / two_pi;         // reduced Planck constant [J s]
inline constexpr double boltzmann = 1.380649e-23;       // Boltzmann constant [J/K] (exact)
inline constexpr double m_electron = 9.1093837015e-31;  // electron rest mass [kg]

}  // namespace constants

// Constant record handed to code that wants the constants as a value object.
// Immutable by convention: every field is initialized from the namespace values
// and nothing in the library writes to it.
struct PhysConstants {
  double e = constants::e_charge;
  double h = constants::planck;
  double hbar = constants::hbar;
  double kB = constants::boltzmann;
  double m_e = constants::m_electron;

  friend bool operator==(const PhysConstants&, const PhysConstants&) = default;
};

}  // namespace lptk
