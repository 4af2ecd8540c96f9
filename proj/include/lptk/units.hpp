#pragma once

// The handful of unit conversions the toolkit needs. Inputs arrive in lab units
// (GHz, cm^-2, cm^2/Vs, ps, um); everything internal is SI.

namespace lptk {

inline constexpr double ghz_to_hz(double f) { return f * 1e9; }
inline constexpr double hz_to_ghz(double f) { return f / 1e9; }

inline constexpr double per_cm2_to_per_m2(double n) { return n * 1e4; }
inline constexpr double per_m2_to_per_cm2(double n) { return n / 1e4; }

inline constexpr double cm2_per_vs_to_m2_per_vs(double mu) { return mu * 1e-4; }
inline constexpr double m2_per_vs_to_cm2_per_vs(double mu) { return mu * 1e4; }

inline constexpr double ps_to_s(double t) { return t * 1e-12; }
inline constexpr double s_to_ps(double t) { return t * 1e12; }

inline constexpr double um_to_m(double x) { return x * 1e-6; }
inline constexpr double m_to_um(double x) { return x * 1e6; }

}  // namespace lptk
