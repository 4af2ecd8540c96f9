#pragma once

#include <filesystem>
#include <string>

#include "lptk/params.hpp"

namespace lptk {

struct Config {
  MaterialParams material;
  ResonatorParams resonator;

  friend bool operator==(const Config&, const Config&) = default;
};

// Flat JSON object in lab units. Recognized keys (all optional, defaults from
// the parameter records): n_s_per_cm2, m_star_ratio, mu_cm2_per_Vs, tau_q_ps,
// T_el_K, W_um, L_um, f_cav_GHz, Q, eta, tau_p_ps, f_p_GHz.
// Unknown keys and non-numeric values are rejected with a named error.
Config parse_config(const std::string& json_text);
Config load_config(const std::filesystem::path& path);
std::string serialize_config(const Config& c);

}  // namespace lptk
