#include "lptk/params.hpp"

#include <cmath>

#include "lptk/errors.hpp"

namespace lptk {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ValidationError(what);
}

bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate(const MaterialParams& m) {
  require(finite_pos(m.n_s), "MaterialParams: n_s must be > 0");
  require(finite_pos(m.m_star), "MaterialParams: m_star must be > 0");
  require(finite_pos(m.mu), "MaterialParams: mu must be > 0");
  require(finite_pos(m.tau_q), "MaterialParams: tau_q must be > 0");
  require(std::isfinite(m.T_el) && m.T_el >= 0.0, "MaterialParams: T_el must be >= 0");
  require(finite_pos(m.W), "MaterialParams: W must be > 0");
  require(finite_pos(m.L), "MaterialParams: L must be > 0");
}

void validate(const ResonatorParams& r) {
  require(finite_pos(r.f_cav), "ResonatorParams: f_cav must be > 0");
  require(finite_pos(r.Q), "ResonatorParams: Q must be > 0");
  require(std::isfinite(r.eta) && r.eta >= 0.0, "ResonatorParams: eta must be >= 0");
  require(finite_pos(r.tau_p), "ResonatorParams: tau_p must be > 0");
  require(std::isfinite(r.f_p) && r.f_p >= 0.0, "ResonatorParams: f_p must be >= 0");
}

double transport_lifetime(const MaterialParams& m) {
  return m.mu * m.m_star / constants::e_charge;
}

bool lifetime_ordering_ok(const MaterialParams& m) {
  return transport_lifetime(m) >= m.tau_q;
}

double cavity_linewidth(const ResonatorParams& r) { return r.f_cav / r.Q; }

double rabi_frequency(const ResonatorParams& r) { return r.eta * r.f_cav; }

}  // namespace lptk
