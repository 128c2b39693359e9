#include "rgflow/run_config.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "rgflow/errors.hpp"

namespace rgflow {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    try {
        size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        if (!std::isfinite(d)) throw std::invalid_argument("not finite");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(line, key, "expected a real number, got '" + v + "'");
    }
}

int parse_int(const std::string& v, int line, const std::string& key) {
    try {
        size_t pos = 0;
        const int i = std::stoi(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return i;
    } catch (const std::exception&) {
        throw ConfigError(line, key, "expected an integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError(line, key, "expected a boolean, got '" + v + "'");
}

std::vector<double> parse_doubles(const std::string& v, int line,
                                  const std::string& key) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(v);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item, line, key));
    }
    return out;
}

// "lambda a b c; lambda a b c; ..."
std::vector<MonomialTerm> parse_terms(const std::string& v, int line,
                                      const std::string& key) {
    std::vector<MonomialTerm> out;
    std::string group;
    std::istringstream in(v);
    while (std::getline(in, group, ';')) {
        group = trim(group);
        if (group.empty()) continue;
        std::istringstream gs(group);
        std::vector<std::string> parts;
        std::string p;
        while (gs >> p) parts.push_back(p);
        if (parts.size() != 4) {
            throw ConfigError(line, key,
                              "each term needs 4 numbers 'lambda a b c', got '" +
                                  group + "'");
        }
        MonomialTerm t;
        t.coeff = parse_double(parts[0], line, key);
        t.a = parse_double(parts[1], line, key);
        t.b = parse_double(parts[2], line, key);
        t.c = parse_double(parts[3], line, key);
        if (t.a < 0.0 || t.b < 0.0 || t.c < 0.0) {
            throw ConfigError(line, key, "term exponents must be >= 0");
        }
        out.push_back(t);
    }
    return out;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               int line) {
    auto is = [&](const char* dotted, const char* alias) {
        return key == dotted || key == alias;
    };
    if (is("equation.mu", "mu")) {
        cfg.mu = parse_double(value, line, key);
    } else if (is("equation.g", "g")) {
        if (value != "none" && value != "g1" && value != "g2" && value != "g3" &&
            value != "fourier") {
            throw ConfigError(line, key, "unknown coefficient '" + value + "'");
        }
        cfg.g_name = value;
    } else if (is("equation.g_cos", "g_cos")) {
        cfg.g_cos = parse_doubles(value, line, key);
    } else if (is("equation.g_sin", "g_sin")) {
        cfg.g_sin = parse_doubles(value, line, key);
    } else if (is("equation.form", "form")) {
        if (value == "standard") cfg.form = EquationForm::Standard;
        else if (value == "divergence") cfg.form = EquationForm::Divergence;
        else if (value == "barenblatt") cfg.form = EquationForm::Barenblatt;
        else throw ConfigError(line, key, "unknown form '" + value + "'");
    } else if (is("equation.epsilon", "epsilon")) {
        cfg.epsilon = parse_double(value, line, key);
        if (cfg.epsilon < 0.0) throw ConfigError(line, key, "epsilon must be >= 0");
    } else if (is("equation.terms", "terms")) {
        cfg.terms = parse_terms(value, line, key);
    } else if (is("ic.name", "ic")) {
        if (value != "gauss" && value != "bump" && value != "double_bump") {
            throw ConfigError(line, key, "unknown initial condition '" + value + "'");
        }
        cfg.ic_name = value;
    } else if (is("ic.amplitude", "amplitude")) {
        cfg.ic_amplitude = parse_double(value, line, key);
    } else if (is("ic.width", "width")) {
        cfg.ic_width = parse_double(value, line, key);
        if (!(cfg.ic_width > 0.0)) throw ConfigError(line, key, "width must be > 0");
    } else if (is("grid.half_width", "half_width")) {
        cfg.half_width = parse_double(value, line, key);
        if (!(cfg.half_width > 0.0)) {
            throw ConfigError(line, key, "half_width must be > 0");
        }
    } else if (is("grid.count", "count")) {
        cfg.grid_count = parse_int(value, line, key);
        if (cfg.grid_count < 3 || cfg.grid_count % 2 == 0) {
            throw ConfigError(line, key, "count must be odd and >= 3");
        }
    } else if (is("rg.L", "L")) {
        cfg.L = parse_double(value, line, key);
        if (!(cfg.L > 1.0)) throw ConfigError(line, key, "L must be > 1");
    } else if (is("rg.policy", "policy")) {
        if (value == "fixed_half") cfg.policy = BetaPolicy::Kind::FixedHalf;
        else if (value == "scaling_relation")
            cfg.policy = BetaPolicy::Kind::ScalingRelation;
        else throw ConfigError(line, key, "unknown policy '" + value + "'");
    } else if (is("rg.dominant_term", "dominant_term")) {
        cfg.dominant_term = parse_int(value, line, key);
        if (cfg.dominant_term < 1) {
            throw ConfigError(line, key, "dominant_term is a 1-based term index");
        }
    } else if (is("rg.max_iter", "max_iter")) {
        cfg.max_iter = parse_int(value, line, key);
        if (cfg.max_iter < 1) throw ConfigError(line, key, "max_iter must be >= 1");
    } else if (is("rg.reldiff_tol", "reldiff_tol")) {
        cfg.reldiff_tol = parse_double(value, line, key);
        if (cfg.reldiff_tol < 0.0) {
            throw ConfigError(line, key, "reldiff_tol must be >= 0");
        }
    } else if (is("stepper.C", "C")) {
        cfg.stepper.stability_constant = parse_double(value, line, key);
        if (!(cfg.stepper.stability_constant > 0.0 &&
              cfg.stepper.stability_constant <= 0.5)) {
            throw ConfigError(line, key, "C must lie in (0, 0.5]");
        }
    } else if (is("stepper.trim_floor", "trim_floor")) {
        cfg.stepper.trim_floor = parse_double(value, line, key);
        if (cfg.stepper.trim_floor < 0.0) {
            throw ConfigError(line, key, "trim_floor must be >= 0");
        }
    } else if (is("stepper.pad_per_step", "pad_per_step")) {
        cfg.stepper.pad_per_step = parse_int(value, line, key);
        if (cfg.stepper.pad_per_step < 1) {
            throw ConfigError(line, key, "pad_per_step must be >= 1");
        }
    } else if (is("output.dir", "out")) {
        cfg.out_dir = value;
    } else if (is("output.trace", "write_trace")) {
        cfg.write_trace = parse_bool(value, line, key);
    } else if (is("output.profile", "write_profile")) {
        cfg.write_profile = parse_bool(value, line, key);
    } else if (is("output.summary", "write_summary")) {
        cfg.write_summary = parse_bool(value, line, key);
    } else {
        throw ConfigError(line, key, "unknown key");
    }
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(lineno, stripped, "expected 'key = value'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "", "empty key");
        apply_key(cfg, key, value, lineno);
    }

    // cross-field checks
    if (cfg.g_name == "fourier" && cfg.g_cos.empty() && cfg.g_sin.empty()) {
        throw ConfigError(lineno, "equation.g",
                          "fourier coefficient lists are both empty");
    }
    if (cfg.form == EquationForm::Barenblatt &&
        (cfg.mu != 0.0 || !cfg.terms.empty())) {
        throw ConfigError(lineno, "equation.form",
                          "Barenblatt form requires mu = 0 and no terms");
    }
    if (cfg.policy == BetaPolicy::Kind::ScalingRelation &&
        cfg.dominant_term > static_cast<int>(cfg.terms.size())) {
        throw ConfigError(lineno, "rg.dominant_term",
                          "index exceeds the number of terms");
    }
    try {
        validate(build_equation(cfg));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(lineno, "equation", e.what());
    }
    return cfg;
}

EquationSpec build_equation(const RunConfig& cfg) {
    EquationSpec spec;
    spec.mu = cfg.mu;
    if (cfg.g_name == "none") spec.g = no_g();
    else if (cfg.g_name == "fourier") spec.g = fourier_g(cfg.g_cos, cfg.g_sin);
    else spec.g = builtin_g(cfg.g_name);
    spec.form = cfg.form;
    spec.epsilon = cfg.epsilon;
    spec.terms = cfg.terms;
    return spec;
}

Field build_initial_field(const RunConfig& cfg) {
    const Grid grid = make_grid(cfg.half_width, cfg.grid_count);
    return initial_condition(cfg.ic_name, cfg.ic_amplitude, cfg.ic_width)(grid);
}

BetaPolicy build_policy(const RunConfig& cfg) {
    if (cfg.policy == BetaPolicy::Kind::ScalingRelation) {
        return BetaPolicy::scaling_relation(cfg.dominant_term - 1);
    }
    return BetaPolicy::fixed_half();
}

StopRule build_stop(const RunConfig& cfg) {
    return StopRule{cfg.max_iter, cfg.reldiff_tol};
}

} // namespace rgflow
