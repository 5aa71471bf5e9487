#include "axicyl/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace axicyl {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& v, int line) {
    const double x = to_double(v, line);
    const int n = static_cast<int>(x);
    if (double(n) != x) fail(line, "expected an integer, got '" + v + "'");
    return n;
}

bool to_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

AdvectionScheme to_scheme(const std::string& v, int line) {
    if (v == "upwind1") return AdvectionScheme::Upwind1;
    if (v == "central2") return AdvectionScheme::Central2;
    fail(line, "advection scheme must be upwind1 or central2, got '" + v + "'");
}

const std::set<std::string> kScenarioOverrideKeys = {
    "amplitude", "g0",        "alpha0",    "fr_amp",
    "fphi_amp",  "theta_amp", "omega_amp", "theta_base"};

void set_key(RunConfig& c, const std::string& section, const std::string& key,
             const std::string& value, int line) {
    if (section == "scenario") {
        if (key == "name") {
            c.scenario = value;
            return;
        }
        if (kScenarioOverrideKeys.count(key)) {
            c.overrides[key] = to_double(value, line);
            return;
        }
    } else if (section == "grid") {
        if (key == "R") { c.R = to_double(value, line); return; }
        if (key == "a") { c.a = to_double(value, line); return; }
        if (key == "nr") { c.nr = to_int(value, line); return; }
        if (key == "nz") { c.nz = to_int(value, line); return; }
    } else if (section == "physics") {
        if (key == "nu") { c.nu = to_double(value, line); return; }
        if (key == "kappa") { c.kappa = to_double(value, line); return; }
    } else if (section == "integration") {
        if (key == "t_end") { c.t_end = to_double(value, line); return; }
        if (key == "cfl_adv") { c.cfl_adv = to_double(value, line); return; }
        if (key == "cfl_diff") { c.cfl_diff = to_double(value, line); return; }
        if (key == "scheme_u") { c.scheme_u = to_scheme(value, line); return; }
        if (key == "scheme_theta") { c.scheme_theta = to_scheme(value, line); return; }
        if (key == "scheme_omega") { c.scheme_omega = to_scheme(value, line); return; }
        if (key == "dt_override") { c.dt_override = to_double(value, line); return; }
    } else if (section == "diagnostics") {
        if (key == "cadence") { c.cadence = to_int(value, line); return; }
        if (key == "write_fields") { c.write_fields = to_bool(value, line); return; }
        if (key == "track_p") {
            c.track_p.clear();
            for (const auto& tok : split_list(value))
                c.track_p.push_back(to_double(tok, line));
            return;
        }
    } else if (section == "budget") {
        if (key == "eps0") { c.budget.eps0 = to_double(value, line); return; }
        if (key == "eps1") { c.budget.eps1 = to_double(value, line); return; }
        if (key == "eps2") { c.budget.eps2 = to_double(value, line); return; }
        if (key == "d") { c.budget.d = to_double(value, line); return; }
        if (key == "c0") { c.budget.c0 = to_double(value, line); return; }
        if (key == "c_star") { c.budget.c_star = to_double(value, line); return; }
        if (key == "mu") {
            c.mu_list.clear();
            for (const auto& tok : split_list(value))
                c.mu_list.push_back(to_double(tok, line));
            return;
        }
    } else if (section == "elliptic") {
        if (key == "tol") { c.elliptic_tol = to_double(value, line); return; }
    } else if (section == "checks") {
        if (key == "slack_energy") { c.checks.slack_energy = to_double(value, line); return; }
        if (key == "slack_chain") { c.checks.slack_chain = to_double(value, line); return; }
        if (key == "div_c_max") { c.checks.div_c_max = to_double(value, line); return; }
        if (key == "samples") { c.checks.samples = to_int(value, line); return; }
    } else if (section == "output") {
        if (key == "dir") { c.out_dir = value; return; }
    } else if (section == "random") {
        if (key == "seed") {
            try {
                c.seed = static_cast<std::uint64_t>(std::stoull(value));
            } catch (...) {
                fail(line, "expected an unsigned integer seed, got '" + value + "'");
            }
            return;
        }
    } else if (section == "convergence") {
        if (key == "grids") {
            c.conv_grids.clear();
            for (const auto& tok : split_list(value))
                c.conv_grids.push_back(to_int(tok, line));
            return;
        }
    } else {
        fail(line, "unknown section [" + section + "]");
    }
    fail(line, "unknown key '" + key + "' in section [" + section + "]");
}

}  // namespace

void validate_config(const RunConfig& c) {
    if (!(c.R > 0.0) || !(c.a > 0.0))
        throw ConfigError("grid dimensions must be positive");
    if (c.nr < 8 || c.nz < 8)
        throw ConfigError("grid counts nr, nz must be at least 8");
    if (!(c.nu > 0.0) || !(c.kappa > 0.0))
        throw ConfigError("nu and kappa must be positive");
    if (c.t_end < 0.0) throw ConfigError("t_end must be nonnegative");
    if (!(c.cfl_adv > 0.0) || !(c.cfl_diff > 0.0))
        throw ConfigError("CFL numbers must be positive");
    if (c.cadence < 1) throw ConfigError("diagnostics cadence must be >= 1");
    if (!(c.elliptic_tol > 0.0)) throw ConfigError("elliptic tol must be positive");
    if (!(c.budget.d > 3.0)) throw ConfigError("d must exceed 3");
    for (double p : c.track_p)
        if (p < 1.0) throw ConfigError("tracked norm exponents must be >= 1");
    for (double mu : c.mu_list)
        if (!(mu > 0.0 && mu < 1.0))
            throw ConfigError("weighted-estimate mu must lie in (0, 1)");
    if (c.checks.samples < 1) throw ConfigError("checks samples must be >= 1");
}

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::stringstream ss(text);
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(ss, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (section.empty()) fail(line, "empty section name");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for key '" + key + "'");
        if (section.empty()) fail(line, "key '" + key + "' outside any section");
        set_key(c, section, key, value, line);
    }
    validate_config(c);
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override must look like section.key=value: '" +
                          assignment + "'");
    const std::string path = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key must be section.key: '" + path + "'");
    set_key(cfg, path.substr(0, dot), path.substr(dot + 1), value, 0);
    validate_config(cfg);
}

DynamicsConfig dynamics_config(const RunConfig& c) {
    DynamicsConfig d;
    d.nu = c.nu;
    d.kappa = c.kappa;
    d.cfl_adv = c.cfl_adv;
    d.cfl_diff = c.cfl_diff;
    d.scheme_u = c.scheme_u;
    d.scheme_theta = c.scheme_theta;
    d.scheme_omega = c.scheme_omega;
    d.elliptic_tol = c.elliptic_tol;
    return d;
}

RunParams run_params(const RunConfig& c) {
    RunParams p;
    p.t_end = c.t_end;
    p.cadence = c.cadence;
    p.track_p = c.track_p;
    p.d_exponent = c.budget.d;
    p.dt_override = c.dt_override;
    return p;
}

}  // namespace axicyl
