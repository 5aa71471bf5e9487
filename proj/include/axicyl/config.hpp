/// @file config.hpp
/// @brief Sectioned key = value run configuration with hard errors on
///        unknown keys.

#pragma once

#include "axicyl/estimates.hpp"
#include "axicyl/scenarios.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace axicyl {

struct CheckSettings {
    double slack_energy = 0.05;  ///< scheme-derived energy identities
    double slack_chain = 0.10;   ///< estimate chains with empirical constants
    double div_c_max = 50.0;     ///< single-grid ceiling: max|div v| <= C h^2
    int samples = 20;            ///< randomized-suite draws
};

struct RunConfig {
    std::string scenario = "zero";
    ScenarioOverrides overrides;

    double R = 1.0, a = 1.0;
    int nr = 32, nz = 32;

    double nu = 1.0, kappa = 1.0;

    double t_end = 0.05;
    double cfl_adv = 0.4, cfl_diff = 0.25;
    AdvectionScheme scheme_u = AdvectionScheme::Upwind1;
    AdvectionScheme scheme_theta = AdvectionScheme::Upwind1;
    AdvectionScheme scheme_omega = AdvectionScheme::Central2;
    double dt_override = -1.0;

    int cadence = 1;
    std::vector<double> track_p = {1.0, 6.0 / 5.0, 10.0 / 7.0, 1.5, 2.0, 3.0};
    bool write_fields = false;

    BudgetParams budget;
    std::vector<double> mu_list = {0.25, 0.5, 0.75};

    double elliptic_tol = kEllipticDefaultTol;

    CheckSettings checks;

    std::string out_dir = "out";
    std::uint64_t seed = 42;

    std::vector<int> conv_grids = {16, 32, 64};
};

/// Parses the documented INI-style text (sections, key = value, '#'
/// comments). Unknown sections or keys are hard errors carrying the line
/// number; semantic violations name the rule.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

/// Applies a "section.key=value" override on top of a parsed config.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Validation shared by parsing and overrides; throws ConfigError.
void validate_config(const RunConfig& cfg);

DynamicsConfig dynamics_config(const RunConfig& cfg);
RunParams run_params(const RunConfig& cfg);

}  // namespace axicyl
