#pragma once

#include <vector>

#include "lptk/grid.hpp"
#include "lptk/landau.hpp"

namespace lptk {

enum class PolaritonModelKind { CoupledMode, Hopfield };

// Magneto-plasmon dispersion of the laterally confined 2DEG,
// f_mp = sqrt(f_c^2 + f_p^2); reduces to the cyclotron line at f_p = 0.
double magneto_plasmon_frequency(double B, const ResonatorParams& r, const MaterialParams& m);

struct BranchFreqs {
  double f_lp = 0;
  double f_up = 0;
};

// Normal modes of the 2x2 coupled-oscillator problem,
//   f_pm = ((f_cav + f_mp) +- sqrt((f_cav - f_mp)^2 + 4 Omega^2)) / 2.
BranchFreqs coupled_mode_freqs(double f_cav, double f_mp, double omega);

// Positive roots of the Hopfield secular equation with the diamagnetic term
// folded in:  f^4 - f^2 (f_cav^2 + f_mp^2 + 4 Omega^2) + f_cav^2 f_mp^2 = 0.
// Opens the polaritonic gap f_up(f_mp = 0) = sqrt(f_cav^2 + 4 Omega^2).
BranchFreqs hopfield_freqs(double f_cav, double f_mp, double omega);

// One field sample of the polariton dispersion. Weights are the normalized
// two-mode projector components w_phot = Omega^2/(Omega^2 + (f - f_cav)^2),
// w_mat = 1 - w_phot per branch.
struct BranchPoint {
  double B = 0;
  double f_lp = 0, f_up = 0;            // branch frequencies [Hz]
  double w_phot_lp = 0, w_phot_up = 0;  // photonic weights
  double w_mat_lp = 0, w_mat_up = 0;    // matter weights
};

BranchPoint branches_coupled_mode(double B, const ResonatorParams& r, const MaterialParams& m);
BranchPoint branches_hopfield(double B, const ResonatorParams& r, const MaterialParams& m);
BranchPoint branches(double B, PolaritonModelKind kind, const ResonatorParams& r,
                     const MaterialParams& m);

// One BranchPoint per axis sample.
std::vector<BranchPoint> dispersion_sweep(const Grid1D& b_axis, PolaritonModelKind kind,
                                          const ResonatorParams& r, const MaterialParams& m);

// Field where the magneto-plasmon meets the bare cavity, f_mp(B*) = f_cav.
// Rejects f_cav < f_p (no crossing).
double anti_crossing_field(const ResonatorParams& r, const MaterialParams& m);

// FWHM linewidth of a branch: photon-weighted cavity loss plus matter-weighted
// level broadening, kappa_j = (f_cav/Q) w_phot + w_mat/(2 pi tau_q).
double branch_linewidth(double w_phot, double w_mat, const ResonatorParams& r,
                        const MaterialParams& m);

// Unit-peak Lorentzian with half-width gamma.
inline double lorentzian_peak1(double x, double gamma) {
  return (gamma * gamma) / (x * x + gamma * gamma);
}

// Synthetic free-space transmission
//   T(B,f) = 1 - sum_j dip_depth * w_phot_j * L(f - f_j; kappa_j/2),
// clipped to [0,1]. Carries no filling-factor dependence by construction.
double transmission_at(double B, double f, PolaritonModelKind kind, const ResonatorParams& r,
                       const MaterialParams& m, double dip_depth = 0.8);

ResponseMap transmission_map(const Grid1D& b_axis, const Grid1D& f_axis, PolaritonModelKind kind,
                             const ResonatorParams& r, const MaterialParams& m,
                             double dip_depth = 0.8);

}  // namespace lptk
