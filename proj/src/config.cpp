#include "qtm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qtm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    if (value == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t consumed = 0;
        const double parsed = std::stod(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t consumed = 0;
        const long parsed = std::stol(value, &consumed);
        if (consumed != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-integer value '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError("config: key '" + key + "' must be true or false");
}

bool parse_scale(const std::string& key, const std::string& value) {
    if (value == "log") return true;
    if (value == "linear") return false;
    throw ConfigError("config: key '" + key + "' must be linear or log");
}

models::ModelKind parse_model(const std::string& value) {
    if (value == "reset") return models::ModelKind::reset;
    if (value == "flux") return models::ModelKind::flux;
    if (value == "dot") return models::ModelKind::dot;
    throw ConfigError("config: model must be reset, flux or dot (got '" + value + "')");
}

// Canonical sweep/free parameter names; p_c/Gamma_c style aliases fold in.
std::string canonical_param(const std::string& name) {
    if (name == "p_c" || name == "Gamma_c" || name == "rate_c") return "rate_c";
    if (name == "p_h" || name == "Gamma_h" || name == "rate_h") return "rate_h";
    if (name == "g" || name == "T_c" || name == "T_h" || name == "U") return name;
    throw ConfigError("config: unknown parameter name '" + name + "'");
}

}  // namespace

std::vector<double> SweepAxis::values() const {
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = min;
        return out;
    }
    if (log_scale) {
        const double step = (std::log10(max) - std::log10(min)) / (points - 1);
        for (int i = 0; i < points; ++i)
            out[static_cast<std::size_t>(i)] = std::pow(10.0, std::log10(min) + step * i);
    } else {
        const double step = (max - min) / (points - 1);
        for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = min + step * i;
    }
    return out;
}

RunConfig parse_config(const std::string& text, Command cmd) {
    std::map<std::string, std::string> kv;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_no) + " is not key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: line " + std::to_string(line_no) + " has empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("config: duplicate key '" + key + "'");
    }

    static const std::set<std::string> known = {
        "model", "E", "g", "p_c", "p_h", "Gamma_c", "Gamma_h", "rate_c", "rate_h",
        "T_c", "T_h", "U",
        "sweep_param", "sweep_min", "sweep_max", "sweep_points", "sweep_scale",
        "sweep2_param", "sweep2_min", "sweep2_max", "sweep2_points", "sweep2_scale",
        "optimize", "optimize_th", "th_min", "th_max",
        "g_min", "g_max", "rate_c_min", "rate_c_max", "rate_h_min", "rate_h_max",
        "grid_points", "max_evals",
        "tc_min", "tc_max", "tc_points", "tc_scale", "th_cap",
        "output", "tolerance", "workers",
    };
    for (const auto& [key, value] : kv)
        if (!known.contains(key)) throw ConfigError("config: unknown key '" + key + "'");

    auto has = [&](const std::string& key) { return kv.contains(key); };
    auto get = [&](const std::string& key) { return kv.at(key); };

    RunConfig cfg;
    if (cmd != Command::verify) {
        if (!has("model")) throw ConfigError("config: missing required key 'model'");
        cfg.model = parse_model(get("model"));
    }
    if (has("E")) cfg.E = parse_double("E", get("E"));
    if (!(cfg.E > 0.0) || std::isinf(cfg.E)) throw ConfigError("config: E must be positive and finite");

    if (has("g")) cfg.g = parse_double("g", get("g"));
    const bool reset = cfg.model == models::ModelKind::reset;
    for (const auto* key : {"p_c", "Gamma_c", "rate_c"}) {
        if (!has(key)) continue;
        if (cfg.rate_c) throw ConfigError("config: rate_c given more than once (aliases)");
        if (reset && std::string(key) == "Gamma_c")
            throw ConfigError("config: the reset model uses p_c, not Gamma_c");
        if (!reset && std::string(key) == "p_c")
            throw ConfigError("config: Lindblad models use Gamma_c, not p_c");
        cfg.rate_c = parse_double(key, get(key));
    }
    for (const auto* key : {"p_h", "Gamma_h", "rate_h"}) {
        if (!has(key)) continue;
        if (cfg.rate_h) throw ConfigError("config: rate_h given more than once (aliases)");
        if (reset && std::string(key) == "Gamma_h")
            throw ConfigError("config: the reset model uses p_h, not Gamma_h");
        if (!reset && std::string(key) == "p_h")
            throw ConfigError("config: Lindblad models use Gamma_h, not p_h");
        cfg.rate_h = parse_double(key, get(key));
    }
    if (has("T_c")) cfg.T_c = parse_double("T_c", get("T_c"));
    if (has("T_h")) cfg.T_h = parse_double("T_h", get("T_h"));
    if (has("U")) {
        if (cfg.model != models::ModelKind::dot)
            throw ConfigError("config: U applies to the dot model only");
        cfg.U = parse_double("U", get("U"));
        if (cfg.U < 0.0 || std::isinf(cfg.U)) throw ConfigError("config: U must be finite and nonnegative");
    }
    if (cfg.model == models::ModelKind::flux) {
        for (const auto& [name, value] : {std::pair{"T_c", cfg.T_c}, {"T_h", cfg.T_h}})
            if (value && std::isinf(*value))
                throw ConfigError("config: " + std::string(name) +
                                  " = inf is not allowed for the flux model; use a large finite value");
    }

    auto parse_axis = [&](const std::string& prefix) -> std::optional<SweepAxis> {
        const std::string p = prefix + "_param";
        if (!has(p)) {
            for (const auto* suffix : {"_min", "_max", "_points", "_scale"})
                if (has(prefix + suffix))
                    throw ConfigError("config: " + prefix + suffix + " given without " + p);
            return std::nullopt;
        }
        SweepAxis axis;
        axis.param = canonical_param(get(p));
        if (!has(prefix + "_min") || !has(prefix + "_max") || !has(prefix + "_points"))
            throw ConfigError("config: " + prefix + " axis needs _min, _max and _points");
        axis.min = parse_double(prefix + "_min", get(prefix + "_min"));
        axis.max = parse_double(prefix + "_max", get(prefix + "_max"));
        axis.points = static_cast<int>(parse_long(prefix + "_points", get(prefix + "_points")));
        if (has(prefix + "_scale")) axis.log_scale = parse_scale(prefix + "_scale", get(prefix + "_scale"));
        if (axis.points < 1) throw ConfigError("config: " + prefix + "_points must be >= 1");
        if (std::isinf(axis.min) || std::isinf(axis.max))
            throw ConfigError("config: sweep bounds must be finite");
        if (!(axis.max >= axis.min)) throw ConfigError("config: " + prefix + "_max must be >= _min");
        if (axis.log_scale && !(axis.min > 0.0))
            throw ConfigError("config: log-scale axes need a positive minimum");
        if (axis.param == "U" && cfg.model != models::ModelKind::dot)
            throw ConfigError("config: U sweep applies to the dot model only");
        return axis;
    };

    cfg.axis1 = parse_axis("sweep");
    cfg.axis2 = parse_axis("sweep2");
    if (has("optimize")) cfg.optimize_couplings = parse_bool("optimize", get("optimize"));
    if (has("optimize_th")) cfg.optimize_T_h = parse_bool("optimize_th", get("optimize_th"));
    if (has("th_min")) cfg.th_min = parse_double("th_min", get("th_min"));
    if (has("th_max")) cfg.th_max = parse_double("th_max", get("th_max"));

    for (const auto* name : {"g", "rate_c", "rate_h"}) {
        const std::string lo_key = std::string(name) + "_min";
        const std::string hi_key = std::string(name) + "_max";
        if (!has(lo_key) && !has(hi_key)) continue;
        if (!has(lo_key) || !has(hi_key))
            throw ConfigError("config: " + std::string(name) + " bounds need both _min and _max");
        const double lo = parse_double(lo_key, get(lo_key));
        const double hi = parse_double(hi_key, get(hi_key));
        if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("config: bad bounds for " + std::string(name));
        cfg.bounds[name] = {lo, hi};
    }
    if (has("grid_points")) cfg.grid_points = static_cast<int>(parse_long("grid_points", get("grid_points")));
    if (has("max_evals")) cfg.max_evals = parse_long("max_evals", get("max_evals"));
    if (cfg.grid_points < 2) throw ConfigError("config: grid_points must be >= 2");
    if (cfg.max_evals < 1) throw ConfigError("config: max_evals must be >= 1");

    if (has("tc_min") || has("tc_max") || has("tc_points") || has("tc_scale")) {
        SweepAxis axis;
        axis.param = "T_c";
        if (!has("tc_min") || !has("tc_max") || !has("tc_points"))
            throw ConfigError("config: threshold grid needs tc_min, tc_max and tc_points");
        axis.min = parse_double("tc_min", get("tc_min"));
        axis.max = parse_double("tc_max", get("tc_max"));
        axis.points = static_cast<int>(parse_long("tc_points", get("tc_points")));
        if (has("tc_scale")) axis.log_scale = parse_scale("tc_scale", get("tc_scale"));
        if (axis.points < 1) throw ConfigError("config: tc_points must be >= 1");
        if (axis.min < 0.0 || std::isinf(axis.max)) throw ConfigError("config: bad threshold T_c grid");
        if (!(axis.max >= axis.min)) throw ConfigError("config: tc_max must be >= tc_min");
        cfg.tc_axis = axis;
    }
    if (has("th_cap")) cfg.th_cap = parse_double("th_cap", get("th_cap"));
    if (!(cfg.th_cap > 0.0) || std::isinf(cfg.th_cap))
        throw ConfigError("config: th_cap must be positive and finite");

    if (has("output")) cfg.output = get("output");
    if (has("tolerance")) {
        cfg.tolerance = parse_double("tolerance", get("tolerance"));
        if (!(*cfg.tolerance > 0.0)) throw ConfigError("config: tolerance must be positive");
    }
    if (has("workers")) {
        cfg.workers = static_cast<int>(parse_long("workers", get("workers")));
        if (cfg.workers < 1) throw ConfigError("config: workers must be >= 1");
    }

    // per-command requirements
    auto require_temperatures = [&] {
        if (!cfg.T_c || !cfg.T_h) throw ConfigError("config: T_c and T_h are required");
        if (*cfg.T_c < 0.0 || *cfg.T_h < 0.0) throw ConfigError("config: temperatures must be nonnegative");
    };
    auto require_couplings = [&] {
        if (!cfg.g || !cfg.rate_c || !cfg.rate_h)
            throw ConfigError("config: g, rate_c and rate_h (p_k or Gamma_k) are required");
    };

    switch (cmd) {
        case Command::steady:
            require_temperatures();
            require_couplings();
            break;
        case Command::sweep: {
            if (!cfg.axis1) throw ConfigError("config: sweep needs a sweep axis");
            std::set<std::string> swept{cfg.axis1->param};
            if (cfg.axis2 && !swept.insert(cfg.axis2->param).second)
                throw ConfigError("config: sweep axes name the same parameter");
            if (cfg.optimize_couplings)
                for (const auto& name : swept)
                    if (name == "g" || name == "rate_c" || name == "rate_h")
                        throw ConfigError(
                            "config: cannot sweep a coupling that optimize = true controls");
            auto fixed_or_swept = [&](const std::string& name, bool fixed) {
                return fixed || swept.contains(name);
            };
            if (!fixed_or_swept("T_c", cfg.T_c.has_value()) ||
                !fixed_or_swept("T_h", cfg.T_h.has_value()))
                throw ConfigError("config: sweep needs T_c and T_h fixed or swept");
            if (!cfg.optimize_couplings) {
                if (!fixed_or_swept("g", cfg.g.has_value()) ||
                    !fixed_or_swept("rate_c", cfg.rate_c.has_value()) ||
                    !fixed_or_swept("rate_h", cfg.rate_h.has_value()))
                    throw ConfigError(
                        "config: sweep needs couplings fixed or swept unless optimize = true");
            }
            break;
        }
        case Command::threshold:
            if (!cfg.tc_axis) throw ConfigError("config: threshold needs tc_min/tc_max/tc_points");
            break;
        case Command::optimize:
            if (!cfg.T_c) throw ConfigError("config: optimize needs T_c");
            if (!cfg.optimize_T_h && !cfg.T_h)
                throw ConfigError("config: optimize needs T_h fixed or optimize_th = true");
            break;
        case Command::verify:
            break;
    }
    return cfg;
}

RunConfig load_config(const std::string& path, Command cmd) {
    std::ifstream file(path);
    if (!file) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream text;
    text << file.rdbuf();
    return parse_config(text.str(), cmd);
}

}  // namespace qtm::cli
