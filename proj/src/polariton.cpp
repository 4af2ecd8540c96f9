#include "lptk/polariton.hpp"

#include <algorithm>
#include <cmath>

#include "lptk/errors.hpp"

namespace lptk {

namespace {

struct Weights {
  double phot = 0;
  double mat = 0;
};

// Normalized two-mode projector components for a branch at frequency f.
// The den == 0 case is the uncoupled branch sitting exactly on the cavity line.
Weights projector_weights(double f_branch, double f_cav, double omega) {
  const double w2 = omega * omega;
  const double d = f_branch - f_cav;
  const double den = w2 + d * d;
  if (den == 0.0) return {1.0, 0.0};
  return {w2 / den, (d * d) / den};
}

BranchPoint assemble_point(double B, double f_cav, double f_mp, double omega,
                           const BranchFreqs& bf) {
  BranchPoint p;
  p.B = B;
  p.f_lp = bf.f_lp;
  p.f_up = bf.f_up;
  const Weights lo = projector_weights(bf.f_lp, f_cav, omega);
  const Weights hi = projector_weights(bf.f_up, f_cav, omega);
  p.w_phot_lp = lo.phot;
  p.w_mat_lp = lo.mat;
  p.w_phot_up = hi.phot;
  p.w_mat_up = hi.mat;
  return p;
}

}  // namespace

double magneto_plasmon_frequency(double B, const ResonatorParams& r, const MaterialParams& m) {
  const double fc = cyclotron_frequency(B, m);
  if (r.f_p == 0.0) return fc;
  return std::hypot(fc, r.f_p);
}

BranchFreqs coupled_mode_freqs(double f_cav, double f_mp, double omega) {
  if (omega == 0.0) return {std::min(f_cav, f_mp), std::max(f_cav, f_mp)};
  const double split = std::sqrt((f_cav - f_mp) * (f_cav - f_mp) + 4.0 * omega * omega);
  const double half_sum = 0.5 * (f_cav + f_mp);
  return {half_sum - 0.5 * split, half_sum + 0.5 * split};
}

BranchFreqs hopfield_freqs(double f_cav, double f_mp, double omega) {
  if (omega == 0.0) return {std::min(f_cav, f_mp), std::max(f_cav, f_mp)};
  const double a = f_cav * f_cav;
  const double b = f_mp * f_mp;
  const double w = omega * omega;
  const double sum = a + b + 4.0 * w;
  // S^2 - 4ab expanded into all-positive terms; no cancellation near degeneracy.
  const double disc = (a - b) * (a - b) + 8.0 * w * (a + b) + 16.0 * w * w;
  const double x_up = 0.5 * (sum + std::sqrt(disc));
  const double x_lp = (x_up > 0.0) ? (a * b) / x_up : 0.0;  // Vieta, stable for small roots
  return {std::sqrt(x_lp), std::sqrt(x_up)};
}

BranchPoint branches_coupled_mode(double B, const ResonatorParams& r, const MaterialParams& m) {
  const double f_mp = magneto_plasmon_frequency(B, r, m);
  const double omega = rabi_frequency(r);
  return assemble_point(B, r.f_cav, f_mp, omega, coupled_mode_freqs(r.f_cav, f_mp, omega));
}

BranchPoint branches_hopfield(double B, const ResonatorParams& r, const MaterialParams& m) {
  const double f_mp = magneto_plasmon_frequency(B, r, m);
  const double omega = rabi_frequency(r);
  return assemble_point(B, r.f_cav, f_mp, omega, hopfield_freqs(r.f_cav, f_mp, omega));
}

BranchPoint branches(double B, PolaritonModelKind kind, const ResonatorParams& r,
                     const MaterialParams& m) {
  return kind == PolaritonModelKind::CoupledMode ? branches_coupled_mode(B, r, m)
                                                 : branches_hopfield(B, r, m);
}

std::vector<BranchPoint> dispersion_sweep(const Grid1D& b_axis, PolaritonModelKind kind,
                                          const ResonatorParams& r, const MaterialParams& m) {
  std::vector<BranchPoint> out;
  out.reserve(static_cast<std::size_t>(b_axis.count));
  for (Eigen::Index i = 0; i < b_axis.count; ++i)
    out.push_back(branches(b_axis.sample(i), kind, r, m));
  return out;
}

double anti_crossing_field(const ResonatorParams& r, const MaterialParams& m) {
  if (!(r.f_cav >= r.f_p))
    throw ValidationError("anti_crossing_field: f_cav < f_p, magneto-plasmon never crosses");
  const double fc_star = std::sqrt((r.f_cav - r.f_p) * (r.f_cav + r.f_p));
  return constants::two_pi * m.m_star * fc_star / constants::e_charge;
}

double branch_linewidth(double w_phot, double w_mat, const ResonatorParams& r,
                        const MaterialParams& m) {
  const double gamma_matter = 1.0 / (constants::two_pi * m.tau_q);  // Gamma/h
  return cavity_linewidth(r) * w_phot + gamma_matter * w_mat;
}

namespace {

struct TransmissionColumn {
  BranchPoint bp;
  double hw_lp = 0, hw_up = 0;      // Lorentzian half-widths kappa_j/2
  double depth_lp = 0, depth_up = 0;
};

TransmissionColumn transmission_column(double B, PolaritonModelKind kind,
                                       const ResonatorParams& r, const MaterialParams& m,
                                       double dip_depth) {
  TransmissionColumn col;
  col.bp = branches(B, kind, r, m);
  col.hw_lp = 0.5 * branch_linewidth(col.bp.w_phot_lp, col.bp.w_mat_lp, r, m);
  col.hw_up = 0.5 * branch_linewidth(col.bp.w_phot_up, col.bp.w_mat_up, r, m);
  col.depth_lp = dip_depth * col.bp.w_phot_lp;
  col.depth_up = dip_depth * col.bp.w_phot_up;
  return col;
}

double transmission_cell(const TransmissionColumn& col, double f) {
  const double t = 1.0 - col.depth_lp * lorentzian_peak1(f - col.bp.f_lp, col.hw_lp) -
                   col.depth_up * lorentzian_peak1(f - col.bp.f_up, col.hw_up);
  return std::clamp(t, 0.0, 1.0);
}

}  // namespace

double transmission_at(double B, double f, PolaritonModelKind kind, const ResonatorParams& r,
                       const MaterialParams& m, double dip_depth) {
  return transmission_cell(transmission_column(B, kind, r, m, dip_depth), f);
}

ResponseMap transmission_map(const Grid1D& b_axis, const Grid1D& f_axis, PolaritonModelKind kind,
                             const ResonatorParams& r, const MaterialParams& m,
                             double dip_depth) {
  ResponseMap map;
  map.quantity = MapQuantity::Transmission;
  map.grid = make_grid2d(b_axis, f_axis);
  for (Eigen::Index ib = 0; ib < b_axis.count; ++ib) {
    const TransmissionColumn col =
        transmission_column(b_axis.sample(ib), kind, r, m, dip_depth);
    for (Eigen::Index jf = 0; jf < f_axis.count; ++jf)
      map.grid.values(ib, jf) = transmission_cell(col, f_axis.sample(jf));
  }
  return map;
}

}  // namespace lptk
