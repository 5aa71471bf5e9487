#include "axicyl/report_io.hpp"

#include <cstdio>
#include <fstream>

namespace axicyl {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(const std::string& path, const NormHistory& history,
                      const std::vector<double>& X) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    const auto keys = history.keys();  // sorted by map order
    out << "t";
    for (const auto& k : keys) out << "," << k;
    out << ",X\n";
    const auto& t = history.times();
    for (std::size_t row = 0; row < t.size(); ++row) {
        out << format_double(t[row]);
        for (const auto& k : keys)
            out << "," << format_double(history.series(k)[row]);
        out << "," << format_double(X[row]) << "\n";
    }
}

void write_field_csv(const std::string& path, const ScalarField& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << "r,z,value\n";
    const Grid& g = f.grid();
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i)
            out << format_double(g.r(i)) << "," << format_double(g.z(j)) << ","
                << format_double(f(i, j)) << "\n";
}

nlohmann::ordered_json constants_to_json(const Constants& c) {
    nlohmann::ordered_json j;
    j["theta_star"] = c.theta_star;
    j["theta_upper"] = c.theta_upper;
    j["phi_bound"] = c.phi_bound;
    j["D0"] = c.D0;
    j["D0_squared_variant"] = c.D0_squared_variant;
    j["D1"] = c.D1;
    j["D2"] = c.D2;
    j["D3"] = c.D3;
    j["B1"] = c.B1;
    j["D4_sq"] = c.D4_sq;
    j["D5_sq"] = c.D5_sq;
    j["D6_sq"] = c.D6_sq;
    j["D7_sq"] = c.D7_sq;
    j["D8_sq"] = c.D8_sq;
    j["D9_sq"] = c.D9_sq;
    j["D10_sq"] = c.D10_sq;
    j["D11"] = c.D11;
    j["D12"] = c.D12;
    j["theta0"] = c.theta0;
    j["eps0"] = c.params.eps0;
    j["eps1"] = c.params.eps1;
    j["eps2"] = c.params.eps2;
    j["d"] = c.params.d;
    j["c0"] = c.params.c0;
    j["c_star"] = c.params.c_star;  // accepted and logged, unused downstream
    return j;
}

nlohmann::ordered_json report_to_json(const EstimateReport& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["margin"] = r.margin;
    j["slack"] = r.slack;
    j["abs_floor"] = r.abs_floor;
    j["pass"] = r.pass;
    j["applicable"] = r.applicable;
    j["notes"] = r.notes;
    return j;
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["scenario"] = c.scenario;
    nlohmann::ordered_json ov;
    for (const auto& [k, v] : c.overrides) ov[k] = v;
    j["overrides"] = ov;
    j["grid"] = {{"R", c.R}, {"a", c.a}, {"nr", c.nr}, {"nz", c.nz}};
    j["physics"] = {{"nu", c.nu}, {"kappa", c.kappa}};
    j["integration"] = {{"t_end", c.t_end},
                        {"cfl_adv", c.cfl_adv},
                        {"cfl_diff", c.cfl_diff}};
    j["budget"] = {{"eps0", c.budget.eps0}, {"eps1", c.budget.eps1},
                    {"eps2", c.budget.eps2}, {"d", c.budget.d},
                    {"c0", c.budget.c0},     {"c_star", c.budget.c_star}};
    j["seed"] = c.seed;
    return j;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace axicyl
