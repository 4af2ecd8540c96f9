#include "lptk/photoresponse.hpp"

#include <algorithm>
#include <cmath>

#include "lptk/errors.hpp"

namespace lptk {

void validate(const PhotoResponseParams& p) {
  if (!(p.A_pol < 0.0)) throw ValidationError("PhotoResponseParams: A_pol must be < 0");
  if (!(p.A_1 > 0.0)) throw ValidationError("PhotoResponseParams: A_1 must be > 0");
  if (!(p.A_hi > 0.0 && p.A_hi <= p.A_1))
    throw ValidationError("PhotoResponseParams: require 0 < A_hi <= A_1");
  if (p.n_max_harmonic < 1)
    throw ValidationError("PhotoResponseParams: n_max_harmonic must be >= 1");
  if (!(p.gamma_LL > 0.0)) throw ValidationError("PhotoResponseParams: gamma_LL must be > 0");
}

namespace {

// Everything that depends only on B, precomputed once per map column.
struct ResponseColumn {
  BranchPoint bp;
  double hw_lp = 0, hw_up = 0;  // branch Lorentzian half-widths
  double f_c = 0;
  double w_deloc = 0, w_loc = 0;
};

ResponseColumn response_column(double B, PolaritonModelKind kind, const ResonatorParams& r,
                               const MaterialParams& m) {
  ResponseColumn col;
  col.bp = branches(B, kind, r, m);
  col.hw_lp = 0.5 * branch_linewidth(col.bp.w_phot_lp, col.bp.w_mat_lp, r, m);
  col.hw_up = 0.5 * branch_linewidth(col.bp.w_phot_up, col.bp.w_mat_up, r, m);
  col.f_c = cyclotron_frequency(B, m);
  const FermiState fs = fermi_state(B, m);
  col.w_deloc = fs.w_deloc;
  col.w_loc = fs.w_loc;
  return col;
}

double polariton_term(const ResponseColumn& col, double f, const PhotoResponseParams& p) {
  return p.A_pol * (col.bp.w_mat_lp * lorentzian_peak1(f - col.bp.f_lp, col.hw_lp) +
                    col.bp.w_mat_up * lorentzian_peak1(f - col.bp.f_up, col.hw_up));
}

double harmonic_term(const ResponseColumn& col, double f, const PhotoResponseParams& p) {
  double sum = 0.0;
  for (int n = 1; n <= p.n_max_harmonic; ++n) {
    const double amp = (n == 1) ? p.A_1 : p.A_hi;
    sum += amp * lorentzian_peak1(f - static_cast<double>(n) * col.f_c, p.gamma_LL);
  }
  return sum;
}

double response_cell(const ResponseColumn& col, double f, const PhotoResponseParams& p) {
  return col.w_deloc * polariton_term(col, f, p) + col.w_loc * harmonic_term(col, f, p);
}

}  // namespace

double polariton_response_at(double B, double f, PolaritonModelKind kind,
                             const ResonatorParams& r, const MaterialParams& m,
                             const PhotoResponseParams& p) {
  return polariton_term(response_column(B, kind, r, m), f, p);
}

double harmonic_response_at(double B, double f, const MaterialParams& m,
                            const PhotoResponseParams& p) {
  // Branch content of the column is unused here; build only what is needed.
  ResponseColumn col;
  col.f_c = cyclotron_frequency(B, m);
  return harmonic_term(col, f, p);
}

double photoresponse_at(double B, double f, PolaritonModelKind kind, const ResonatorParams& r,
                        const MaterialParams& m, const PhotoResponseParams& p) {
  return response_cell(response_column(B, kind, r, m), f, p);
}

ResponseMap photoresponse_map(const Grid1D& b_axis, const Grid1D& f_axis,
                              PolaritonModelKind kind, const ResonatorParams& r,
                              const MaterialParams& m, const PhotoResponseParams& p) {
  if (!(b_axis.start > 0.0))
    throw ValidationError("photoresponse_map: b_axis must start above 0");
  validate(p);
  ResponseMap map;
  map.quantity = MapQuantity::PhotoResponse;
  map.grid = make_grid2d(b_axis, f_axis);
  for (Eigen::Index ib = 0; ib < b_axis.count; ++ib) {
    const ResponseColumn col = response_column(b_axis.sample(ib), kind, r, m);
    for (Eigen::Index jf = 0; jf < f_axis.count; ++jf)
      map.grid.values(ib, jf) = response_cell(col, f_axis.sample(jf), p);
  }
  return map;
}

namespace {

double filling_distance(double nu, FillingSelect which) {
  const double frac = nu - std::floor(nu);
  if (which == FillingSelect::Integer) return std::min(frac, 1.0 - frac);
  return std::abs(frac - 0.5);
}

}  // namespace

ResponseMap slice_by_filling(const ResponseMap& map, const MaterialParams& m,
                             FillingSelect which, double tol) {
  if (!(tol >= 0.0)) throw ValidationError("slice_by_filling: tol must be >= 0");
  const Grid1D& b = map.grid.b_axis;
  if (!(b.start > 0.0)) throw ValidationError("slice_by_filling: B axis must be positive");

  const double nu_hi = filling_factor(b.start, m);  // nu decreases with B
  const double nu_lo = filling_factor(b.stop, m);
  if (std::floor(nu_hi) - std::ceil(nu_lo) + 1.0 < 2.0)
    throw ValidationError("slice_by_filling: B axis spans fewer than two integer fillings");

  std::vector<Eigen::Index> kept;
  for (Eigen::Index i = 0; i < b.count; ++i) {
    const double nu = filling_factor(b.sample(i), m);
    if (filling_distance(nu, which) <= tol) kept.push_back(i);
  }
  if (kept.empty())
    throw ValidationError("slice_by_filling: no columns within tolerance of the selection");

  ResponseMap out;
  out.quantity = map.quantity;
  out.grid.b_axis = map.grid.b_axis;
  out.grid.f_axis = map.grid.f_axis;
  out.grid.values.resize(map.grid.values.rows(), map.grid.values.cols());

  std::size_t right = 0;  // first kept index >= ib
  for (Eigen::Index ib = 0; ib < b.count; ++ib) {
    while (right < kept.size() && kept[right] < ib) ++right;
    if (right < kept.size() && kept[right] == ib) {
      out.grid.values.row(ib) = map.grid.values.row(kept[right]);
      continue;
    }
    if (right == 0) {
      out.grid.values.row(ib) = map.grid.values.row(kept.front());
    } else if (right == kept.size()) {
      out.grid.values.row(ib) = map.grid.values.row(kept.back());
    } else {
      const Eigen::Index lo = kept[right - 1];
      const Eigen::Index hi = kept[right];
      const double t = (b.sample(ib) - b.sample(lo)) / (b.sample(hi) - b.sample(lo));
      out.grid.values.row(ib) =
          (1.0 - t) * map.grid.values.row(lo) + t * map.grid.values.row(hi);
    }
  }
  return out;
}

namespace {

double branch_frequency(const BranchPoint& bp, Branch br) {
  return br == Branch::LP ? bp.f_lp : bp.f_up;
}

}  // namespace

std::vector<DecayLocus> decay_loci(PolaritonModelKind kind, const ResonatorParams& r,
                                   const MaterialParams& m, int n_min, int n_max, double B_lo,
                                   double B_hi, int scan_points) {
  if (n_min < 2) throw ValidationError("decay_loci: n_min must be >= 2");
  if (n_max < n_min) throw ValidationError("decay_loci: n_max must be >= n_min");
  if (!(B_lo > 0.0 && B_hi > B_lo)) throw ValidationError("decay_loci: need 0 < B_lo < B_hi");
  if (scan_points < 2) throw ValidationError("decay_loci: scan_points must be >= 2");

  // Branch and cyclotron frequencies cached over the scan grid; each (n, branch)
  // pair only re-scans the cached arrays for sign changes.
  const Grid1D scan(B_lo, B_hi, scan_points);
  Eigen::ArrayXd f_lp(scan_points), f_up(scan_points), f_c(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    const double B = scan.sample(i);
    const BranchPoint bp = branches(B, kind, r, m);
    f_lp[i] = bp.f_lp;
    f_up[i] = bp.f_up;
    f_c[i] = cyclotron_frequency(B, m);
  }

  std::vector<DecayLocus> loci;
  for (int n = n_min; n <= n_max; ++n) {
    for (Branch br : {Branch::LP, Branch::UP}) {
      const Eigen::ArrayXd& fb = (br == Branch::LP) ? f_lp : f_up;
      auto g_exact = [&](double B) {
        return branch_frequency(branches(B, kind, r, m), br) -
               static_cast<double>(n) * cyclotron_frequency(B, m);
      };
      for (int i = 0; i + 1 < scan_points; ++i) {
        const double gi = fb[i] - static_cast<double>(n) * f_c[i];
        const double gj = fb[i + 1] - static_cast<double>(n) * f_c[i + 1];
        double root = 0.0;
        if (gi == 0.0) {
          if (i > 0) continue;  // interior exact zeros are caught as the right bracket end
          root = scan.sample(i);
        } else if (gj == 0.0) {
          root = scan.sample(i + 1);
        } else if ((gi > 0.0) != (gj > 0.0)) {
          double lo = scan.sample(i);
          double hi = scan.sample(i + 1);
          double glo = gi;
          for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double gm = g_exact(mid);
            if (gm == 0.0) {
              lo = hi = mid;
              break;
            }
            if ((gm > 0.0) == (glo > 0.0)) {
              lo = mid;
              glo = gm;
            } else {
              hi = mid;
            }
          }
          root = 0.5 * (lo + hi);
        } else {
          continue;
        }
        DecayLocus locus;
        locus.n = n;
        locus.branch = br;
        locus.B_star = root;
        locus.f_star = branch_frequency(branches(root, kind, r, m), br);
        loci.push_back(locus);
      }
    }
  }
  std::sort(loci.begin(), loci.end(), [](const DecayLocus& a, const DecayLocus& b) {
    if (a.B_star != b.B_star) return a.B_star < b.B_star;
    if (a.n != b.n) return a.n < b.n;
    return static_cast<int>(a.branch) < static_cast<int>(b.branch);
  });
  return loci;
}

double estimate_polariton_population(double P_irr, const ResonatorParams& r,
                                     double absorbed_fraction) {
  if (!(P_irr >= 0.0)) throw ValidationError("estimate_polariton_population: P_irr must be >= 0");
  if (!(absorbed_fraction >= 0.0 && absorbed_fraction <= 1.0))
    throw ValidationError("estimate_polariton_population: absorbed_fraction must be in [0,1]");
  const double omega = constants::two_pi * r.f_cav;
  const double tau_pol = r.Q / omega;
  return absorbed_fraction * P_irr * tau_pol / (constants::hbar * omega);
}

}  // namespace lptk
