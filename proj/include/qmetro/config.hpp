#pragma once

#include <string>

#include "qmetro/scaling.hpp"

namespace qmetro {

// key = value configuration with '#' comments. Recognized keys:
//   theta, lambda, beta, omega_c, rate_kind, secular, omega0,
//   n_grid (min:max:points), t_window (lo:hi or auto), engine, total_time.
// Unknown keys are a hard error (ConfigError).
SweepSpec parse_config_text(const std::string& text);
SweepSpec parse_config_file(const std::string& path);

SweepEngine engine_from_string(const std::string& s);

}  // namespace qmetro
