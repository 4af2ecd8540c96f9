// lptk: simulate Landau-polariton spectra, magneto-transport and photo-response
// maps of a cavity-coupled 2D electron gas, and fit coupling parameters back out.
//
// Every subcommand writes its outputs atomically and prints a one-line JSON
// summary on stdout. Exit codes: 0 success, 2 bad usage, 3 input validation
// failure, 4 fit non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "lptk/config.hpp"
#include "lptk/errors.hpp"
#include "lptk/fitting.hpp"
#include "lptk/io.hpp"
#include "lptk/photoresponse.hpp"
#include "lptk/polariton.hpp"
#include "lptk/transport.hpp"
#include "lptk/units.hpp"

namespace {

using nlohmann::json;

class UsageError : public lptk::Error {
 public:
  using Error::Error;
};

struct RangeSpec {
  double a = 0;
  double b = 0;
  long n = 0;
};

RangeSpec parse_range(const std::string& s, const char* flag) {
  RangeSpec r;
  char extra = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%ld%c", &r.a, &r.b, &r.n, &extra) != 3)
    throw UsageError(std::string(flag) + " must be start:stop:count, got '" + s + "'");
  return r;
}

void parse_int_pair(const std::string& s, const char* flag, int& lo, int& hi) {
  char extra = 0;
  if (std::sscanf(s.c_str(), "%d:%d%c", &lo, &hi, &extra) != 2)
    throw UsageError(std::string(flag) + " must be lo:hi, got '" + s + "'");
}

lptk::Grid1D b_grid(const RangeSpec& r) { return lptk::Grid1D(r.a, r.b, r.n); }

lptk::Grid1D f_grid_ghz(const RangeSpec& r) {
  return lptk::Grid1D(lptk::ghz_to_hz(r.a), lptk::ghz_to_hz(r.b), r.n);
}

lptk::PolaritonModelKind model_from_name(const std::string& name) {
  if (name == "coupled") return lptk::PolaritonModelKind::CoupledMode;
  if (name == "hopfield") return lptk::PolaritonModelKind::Hopfield;
  throw UsageError("--model must be 'coupled' or 'hopfield', got '" + name + "'");
}

lptk::Config load_config_or_default(const std::string& path) {
  if (path.empty()) return lptk::Config{};
  return lptk::load_config(path);
}

void emit(const json& summary) { std::cout << summary.dump() << "\n"; }

// Shared flag storage; CLI11 binds subcommand options onto this.
struct Args {
  std::string config;
  std::string in;
  std::string out;
  std::string b_range;
  std::string f_range = "60:600:271";
  std::string model = "hopfield";
  std::string n_range = "2:4";
  std::string which = "integer";
  std::uint64_t seed = 1;
  bool render = false;
  bool lock_mstar = false;
  int restarts = 8;
  int bootstrap = 200;
  double threshold = 0.05;
  double min_prominence = 0.02;
  double tol = 0.1;
  double b_pick = 0.0;
};

std::string maybe_render(const lptk::ResponseMap& map, const std::string& out, bool render) {
  if (!render) return {};
  const std::string pgm = out + ".pgm";
  lptk::write_pgm_atomic(pgm, lptk::render_map(map));
  return pgm;
}

int run_simulate_transmission(const Args& a) {
  const lptk::Config cfg = load_config_or_default(a.config);
  const lptk::Grid1D bg = b_grid(parse_range(a.b_range.empty() ? "0:1.2:241" : a.b_range,
                                             "--b-range"));
  const lptk::Grid1D fg = f_grid_ghz(parse_range(a.f_range, "--f-range"));
  const lptk::ResponseMap map = lptk::transmission_map(bg, fg, model_from_name(a.model),
                                                       cfg.resonator, cfg.material);
  lptk::write_file_atomic(a.out, lptk::serialize_map(map));
  const std::string pgm = maybe_render(map, a.out, a.render);
  json s{{"command", "simulate-transmission"}, {"out", a.out},
         {"pgm", pgm.empty() ? json() : json(pgm)}, {"model", a.model},
         {"b_count", bg.count}, {"f_count", fg.count}};
  emit(s);
  return 0;
}

int run_simulate_transport(const Args& a) {
  const lptk::Config cfg = load_config_or_default(a.config);
  if (!lptk::lifetime_ordering_ok(cfg.material))
    std::cerr << "warning: transport lifetime below quantum lifetime (check mu, tau_q)\n";
  const lptk::Grid1D bg =
      b_grid(parse_range(a.b_range.empty() ? "0.05:1.2:2000" : a.b_range, "--b-range"));
  const lptk::TransportTrace trace = lptk::rho_xx_dark(bg, cfg.resonator, cfg.material);
  lptk::write_file_atomic(a.out, lptk::serialize_trace(trace));
  json s{{"command", "simulate-transport"}, {"out", a.out},
         {"rho0_ohm", lptk::drude_rho0(cfg.material)}, {"eta", cfg.resonator.eta},
         {"points", bg.count}};
  emit(s);
  return 0;
}

int run_simulate_photoresponse(const Args& a) {
  const lptk::Config cfg = load_config_or_default(a.config);
  const lptk::Grid1D bg =
      b_grid(parse_range(a.b_range.empty() ? "0.35:1.2:1201" : a.b_range, "--b-range"));
  const lptk::Grid1D fg = f_grid_ghz(parse_range(a.f_range, "--f-range"));
  const lptk::PhotoResponseParams pr;  // calibrated channel amplitudes
  const lptk::ResponseMap map = lptk::photoresponse_map(bg, fg, model_from_name(a.model),
                                                        cfg.resonator, cfg.material, pr);
  lptk::write_file_atomic(a.out, lptk::serialize_map(map));
  const std::string pgm = maybe_render(map, a.out, a.render);
  json s{{"command", "simulate-photoresponse"}, {"out", a.out},
         {"pgm", pgm.empty() ? json() : json(pgm)}, {"model", a.model},
         {"b_count", bg.count}, {"f_count", fg.count}};
  emit(s);
  return 0;
}

int run_decay_loci(const Args& a) {
  const lptk::Config cfg = load_config_or_default(a.config);
  const RangeSpec br = parse_range(a.b_range.empty() ? "0.1:1.5:20000" : a.b_range, "--b-range");
  int n_lo = 2, n_hi = 4;
  parse_int_pair(a.n_range, "--n-range", n_lo, n_hi);
  const auto loci =
      lptk::decay_loci(model_from_name(a.model), cfg.resonator, cfg.material, n_lo, n_hi, br.a,
                       br.b, static_cast<int>(br.n));
  std::string text = "# loci-v1\n";
  for (const lptk::DecayLocus& l : loci) {
    text += std::to_string(l.n);
    text += l.branch == lptk::Branch::LP ? ",LP," : ",UP,";
    text += lptk::format_g17(l.B_star) + "," + lptk::format_g17(l.f_star) + "\n";
  }
  lptk::write_file_atomic(a.out, text);
  json s{{"command", "decay-loci"}, {"out", a.out}, {"model", a.model},
         {"count", loci.size()}};
  emit(s);
  return 0;
}

int run_extract_peaks(const Args& a) {
  const lptk::ResponseMap map = lptk::parse_map(lptk::read_file(a.in));
  const lptk::PeakList peaks = lptk::extract_peaks(map, a.threshold, a.min_prominence);
  lptk::write_file_atomic(a.out, lptk::serialize_peaks(peaks));
  json s{{"command", "extract-peaks"}, {"in", a.in}, {"out", a.out},
         {"n_peaks", peaks.points.size()}};
  emit(s);
  return 0;
}

int run_fit_dispersion(const Args& a) {
  const lptk::Config cfg = load_config_or_default(a.config);
  const lptk::PeakList peaks = lptk::parse_peaks(lptk::read_file(a.in));

  const double m_ratio = cfg.material.m_star / lptk::constants::m_electron;
  const lptk::FitTheta theta0{cfg.resonator.f_cav, cfg.resonator.eta, m_ratio,
                              cfg.resonator.f_p};
  lptk::FitBounds bounds;
  bounds.lo = {0.5 * cfg.resonator.f_cav, 0.0, a.lock_mstar ? m_ratio : 0.5 * m_ratio, 0.0};
  bounds.hi = {2.0 * cfg.resonator.f_cav, 0.6, a.lock_mstar ? m_ratio : 1.5 * m_ratio,
               std::max(3.0 * cfg.resonator.f_p, lptk::ghz_to_hz(150.0))};

  lptk::FitOptions opt;
  opt.seed = a.seed;
  opt.restarts = a.restarts;
  opt.bootstrap = a.bootstrap;

  const lptk::FitResult fit =
      lptk::fit_dispersion(peaks, model_from_name(a.model), theta0, bounds, opt);

  json s{{"command", "fit-dispersion"},
         {"in", a.in},
         {"model", a.model},
         {"f_cav_GHz", lptk::hz_to_ghz(fit.theta[0])},
         {"eta", fit.theta[1]},
         {"m_star_ratio", fit.theta[2]},
         {"f_p_GHz", lptk::hz_to_ghz(fit.theta[3])},
         {"rss_Hz2", fit.rss},
         {"n_points", fit.n_points},
         {"converged", fit.converged},
         {"n_restarts_used", fit.n_restarts_used},
         {"uncertainty",
          json{{"f_cav_GHz", lptk::hz_to_ghz(fit.uncertainty[0])},
               {"eta", fit.uncertainty[1]},
               {"m_star_ratio", fit.uncertainty[2]},
               {"f_p_GHz", lptk::hz_to_ghz(fit.uncertainty[3])}}}};
  if (!a.out.empty()) lptk::write_file_atomic(a.out, s.dump(2) + "\n");
  emit(s);
  if (!fit.converged) throw lptk::FitError("fit-dispersion did not converge");
  return 0;
}

int run_fit_q(const Args& a) {
  const lptk::ResponseMap map = lptk::parse_map(lptk::read_file(a.in));
  Eigen::Index ib_best = 0;
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index ib = 0; ib < map.grid.b_axis.count; ++ib) {
    const double d = std::abs(map.grid.b_axis.sample(ib) - a.b_pick);
    if (d < best) {
      best = d;
      ib_best = ib;
    }
  }
  const Eigen::ArrayXd f = map.grid.f_axis.samples();
  const Eigen::ArrayXd T = map.grid.values.row(ib_best).transpose();
  const lptk::QFitResult q = lptk::fit_quality_factor(f, T);
  json s{{"command", "fit-q"},
         {"in", a.in},
         {"B_tesla", map.grid.b_axis.sample(ib_best)},
         {"Q", q.Q},
         {"f0_GHz", lptk::hz_to_ghz(q.f0)},
         {"gamma_GHz", lptk::hz_to_ghz(q.gamma)},
         {"depth", q.depth},
         {"baseline", q.baseline},
         {"resolved", q.resolved}};
  emit(s);
  return 0;
}

int run_slice_filling(const Args& a) {
  const lptk::Config cfg = load_config_or_default(a.config);
  const lptk::ResponseMap map = lptk::parse_map(lptk::read_file(a.in));
  const lptk::FillingSelect which = a.which == "half-integer" ? lptk::FillingSelect::HalfInteger
                                                              : lptk::FillingSelect::Integer;
  if (a.which != "integer" && a.which != "half-integer")
    throw UsageError("--which must be 'integer' or 'half-integer'");
  const lptk::ResponseMap sliced = lptk::slice_by_filling(map, cfg.material, which, a.tol);
  lptk::write_file_atomic(a.out, lptk::serialize_map(sliced));
  const std::string pgm = maybe_render(sliced, a.out, a.render);
  json s{{"command", "slice-filling"}, {"in", a.in}, {"out", a.out}, {"which", a.which},
         {"tol", a.tol}, {"pgm", pgm.empty() ? json() : json(pgm)}};
  emit(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Landau-polariton spectroscopy and magneto-transport toolkit"};
  app.require_subcommand(1);
  Args a;

  auto add_common = [&](CLI::App* sub, bool needs_out) {
    sub->add_option("--config", a.config, "JSON parameter file");
    if (needs_out) sub->add_option("--out", a.out, "output path")->required();
    sub->add_option("--seed", a.seed, "random seed");
  };

  CLI::App* sim_t = app.add_subcommand("simulate-transmission", "synthesize a THz transmission map");
  add_common(sim_t, true);
  sim_t->add_option("--b-range", a.b_range, "B axis, tesla start:stop:count");
  sim_t->add_option("--f-range", a.f_range, "f axis, GHz start:stop:count");
  sim_t->add_option("--model", a.model, "coupled|hopfield");
  sim_t->add_flag("--render", a.render, "also write a PGM image");

  CLI::App* sim_r = app.add_subcommand("simulate-transport", "dark SdH resistivity trace");
  add_common(sim_r, true);
  sim_r->add_option("--b-range", a.b_range, "B axis, tesla start:stop:count");

  CLI::App* sim_p = app.add_subcommand("simulate-photoresponse", "photo-response map");
  add_common(sim_p, true);
  sim_p->add_option("--b-range", a.b_range, "B axis, tesla start:stop:count");
  sim_p->add_option("--f-range", a.f_range, "f axis, GHz start:stop:count");
  sim_p->add_option("--model", a.model, "coupled|hopfield");
  sim_p->add_flag("--render", a.render, "also write a PGM image");

  CLI::App* loci = app.add_subcommand("decay-loci", "polariton/harmonic resonance fields");
  add_common(loci, true);
  loci->add_option("--b-range", a.b_range, "B scan, tesla start:stop:scan_points");
  loci->add_option("--n-range", a.n_range, "harmonic indices lo:hi");
  loci->add_option("--model", a.model, "coupled|hopfield");

  CLI::App* extract = app.add_subcommand("extract-peaks", "transmission dips to a peak list");
  extract->add_option("--in", a.in, "map CSV")->required();
  extract->add_option("--out", a.out, "peaks CSV")->required();
  extract->add_option("--threshold", a.threshold, "minimum dip depth 1-T");
  extract->add_option("--min-prominence", a.min_prominence, "minimum dip prominence");

  CLI::App* fit_d = app.add_subcommand("fit-dispersion", "fit (f_cav, eta, m*, f_p) to peaks");
  fit_d->add_option("--in", a.in, "peaks CSV")->required();
  fit_d->add_option("--out", a.out, "optional JSON result file");
  fit_d->add_option("--config", a.config, "JSON parameter file (initial guess)");
  fit_d->add_option("--model", a.model, "coupled|hopfield");
  fit_d->add_option("--seed", a.seed, "random seed");
  fit_d->add_option("--restarts", a.restarts, "random multi-starts");
  fit_d->add_option("--bootstrap", a.bootstrap, "bootstrap resamples (0 disables)");
  fit_d->add_flag("--lock-mstar", a.lock_mstar, "fix m* to the config value");

  CLI::App* fit_q = app.add_subcommand("fit-q", "Lorentzian dip fit on one map column");
  fit_q->add_option("--in", a.in, "map CSV")->required();
  fit_q->add_option("--b", a.b_pick, "field of the column to cut, tesla")->required();

  CLI::App* slice = app.add_subcommand("slice-filling", "integer/half-integer filling slice");
  slice->add_option("--in", a.in, "map CSV")->required();
  slice->add_option("--out", a.out, "map CSV")->required();
  slice->add_option("--config", a.config, "JSON parameter file (for n_s)");
  slice->add_option("--which", a.which, "integer|half-integer");
  slice->add_option("--tol", a.tol, "filling-factor tolerance");
  slice->add_flag("--render", a.render, "also write a PGM image");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sim_t->parsed()) return run_simulate_transmission(a);
    if (sim_r->parsed()) return run_simulate_transport(a);
    if (sim_p->parsed()) return run_simulate_photoresponse(a);
    if (loci->parsed()) return run_decay_loci(a);
    if (extract->parsed()) return run_extract_peaks(a);
    if (fit_d->parsed()) return run_fit_dispersion(a);
    if (fit_q->parsed()) return run_fit_q(a);
    if (slice->parsed()) return run_slice_filling(a);
    std::cerr << "usage error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const lptk::FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return 4;
  } catch (const lptk::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const lptk::ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
