#include "qmetro/config.hpp"

#include <fstream>
#include <sstream>

#include "qmetro/errors.hpp"

namespace qmetro {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': " + v);
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

void parse_rate_kind(const std::string& v, NoiseModel& model) {
    if (v == "tcl-ohmic") {
        model.rate_kind = RateKind::TclOhmic;
        return;
    }
    if (v == "semigroup") {
        model.rate_kind = RateKind::Semigroup;
        return;
    }
    if (v.rfind("custom:", 0) == 0) {
        model.rate_kind = RateKind::Custom;
        model.rate_grid.clear();
        model.rate_values.clear();
        for (const std::string& pair : split(v.substr(7), ',')) {
            auto tv = split(pair, ':');
            if (tv.size() != 2) throw ConfigError("bad custom rate entry: " + pair);
            model.rate_grid.push_back(to_double("rate_kind", tv[0]));
            model.rate_values.push_back(to_double("rate_kind", tv[1]));
        }
        return;
    }
    throw ConfigError("unknown rate_kind: " + v);
}

}  // namespace

SweepEngine engine_from_string(const std::string& s) {
    if (s == "channel-extension") return SweepEngine::ChannelExtension;
    if (s == "parity-ghz") return SweepEngine::ParityGhz;
    if (s == "analytic-pc") return SweepEngine::AnalyticPc;
    if (s == "analytic-dephasing") return SweepEngine::AnalyticDephasing;
    throw ConfigError("unknown engine: " + s);
}

SweepSpec parse_config_text(const std::string& text) {
    SweepSpec spec;
    spec.n_grid = geometric_n_grid(1, 1000, 10);
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (val.empty()) throw ConfigError("empty value for key '" + key + "'");

        if (key == "theta") {
            spec.model.theta = to_double(key, val);
        } else if (key == "lambda") {
            spec.model.lambda = to_double(key, val);
        } else if (key == "beta") {
            spec.model.beta = to_double(key, val);
        } else if (key == "omega_c") {
            spec.model.omega_c = to_double(key, val);
        } else if (key == "rate_kind") {
            parse_rate_kind(val, spec.model);
        } else if (key == "secular") {
            if (val == "true") {
                spec.model.secular = true;
            } else if (val == "false") {
                spec.model.secular = false;
            } else {
                throw ConfigError("secular must be true or false");
            }
        } else if (key == "omega0") {
            spec.omega0 = to_double(key, val);
        } else if (key == "n_grid") {
            auto parts = split(val, ':');
            if (parts.size() != 3) throw ConfigError("n_grid must be min:max:points");
            spec.n_grid = geometric_n_grid(static_cast<int>(to_double(key, parts[0])),
                                           static_cast<int>(to_double(key, parts[1])),
                                           static_cast<int>(to_double(key, parts[2])));
        } else if (key == "t_window") {
            if (val == "auto") {
                spec.t_lo = spec.t_hi = 0.0;
            } else {
                auto parts = split(val, ':');
                if (parts.size() != 2) throw ConfigError("t_window must be lo:hi or auto");
                spec.t_lo = to_double(key, parts[0]);
                spec.t_hi = to_double(key, parts[1]);
            }
        } else if (key == "engine") {
            spec.engine = engine_from_string(val);
        } else if (key == "total_time") {
            spec.total_time = to_double(key, val);
        } else {
            throw ConfigError("unknown key: " + key);
        }
    }
    return spec;
}

SweepSpec parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

}  // namespace qmetro
