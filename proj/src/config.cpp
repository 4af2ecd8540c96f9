#include "lptk/config.hpp"

#include <json.hpp>

#include "lptk/errors.hpp"
#include "lptk/io.hpp"
#include "lptk/units.hpp"

namespace lptk {

namespace {

double number_value(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number()) throw ParseError("config key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

Config parse_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a flat JSON object");

  Config c;
  for (const auto& [key, value] : j.items()) {
    if (key == "n_s_per_cm2") c.material.n_s = per_cm2_to_per_m2(number_value(value, key));
    else if (key == "m_star_ratio")
      c.material.m_star = number_value(value, key) * constants::m_electron;
    else if (key == "mu_cm2_per_Vs")
      c.material.mu = cm2_per_vs_to_m2_per_vs(number_value(value, key));
    else if (key == "tau_q_ps") c.material.tau_q = ps_to_s(number_value(value, key));
    else if (key == "T_el_K") c.material.T_el = number_value(value, key);
    else if (key == "W_um") c.material.W = um_to_m(number_value(value, key));
    else if (key == "L_um") c.material.L = um_to_m(number_value(value, key));
    else if (key == "f_cav_GHz") c.resonator.f_cav = ghz_to_hz(number_value(value, key));
    else if (key == "Q") c.resonator.Q = number_value(value, key);
    else if (key == "eta") c.resonator.eta = number_value(value, key);
    else if (key == "tau_p_ps") c.resonator.tau_p = ps_to_s(number_value(value, key));
    else if (key == "f_p_GHz") c.resonator.f_p = ghz_to_hz(number_value(value, key));
    else throw ParseError("unknown config key '" + key + "'");
  }
  validate(c.material);
  validate(c.resonator);
  return c;
}

Config load_config(const std::filesystem::path& path) { return parse_config(read_file(path)); }

std::string serialize_config(const Config& c) {
  nlohmann::json j;
  j["n_s_per_cm2"] = per_m2_to_per_cm2(c.material.n_s);
  j["m_star_ratio"] = c.material.m_star / constants::m_electron;
  j["mu_cm2_per_Vs"] = m2_per_vs_to_cm2_per_vs(c.material.mu);
  j["tau_q_ps"] = s_to_ps(c.material.tau_q);
  j["T_el_K"] = c.material.T_el;
  j["W_um"] = m_to_um(c.material.W);
  j["L_um"] = m_to_um(c.material.L);
  j["f_cav_GHz"] = hz_to_ghz(c.resonator.f_cav);
  j["Q"] = c.resonator.Q;
  j["eta"] = c.resonator.eta;
  j["tau_p_ps"] = s_to_ps(c.resonator.tau_p);
  j["f_p_GHz"] = hz_to_ghz(c.resonator.f_p);
  return j.dump(2) + "\n";
}

}  // namespace lptk
