/// @file scenarios.hpp
/// @brief Named initial-data / forcing / coefficient bundles and the
///        manufactured stream-function pair for convergence testing.

#pragma once

#include "axicyl/dynamics.hpp"

#include <map>
#include <string>

namespace axicyl {

struct Scenario {
    std::string name;
    ScalarField u0;          // Odd
    ScalarField omega0;      // Odd
    ScalarField theta0;      // Even, positive
    Forcing forcing;
};

using ScenarioOverrides = std::map<std::string, double>;

/// Builds one of: zero, decaying_swirl, heated_swirl, buoyant_cell,
/// manufactured_elliptic. Overrides (amplitude, g0, alpha0, fr_amp,
/// fphi_amp, theta_amp, omega_amp) refine the built-in profiles; initial
/// data are validated against the boundary and positivity requirements.
Scenario make_scenario(const std::string& name, const GridPtr& grid,
                       const ScenarioOverrides& overrides = {});

/// sup over [theta_star, theta_upper] of |alpha| + |d(alpha)/d(theta)|,
/// sampled at 1024 points, times a 1.001 safety factor.
double alpha_phi_bound(const AlphaProfile& profile, double theta_star,
                       double theta_upper);

/// Validates parities, boundary data, theta positivity, and g >= 0;
/// throws ConfigError naming the violated rule.
void validate_initial_data(const Scenario& sc);

/// Manufactured pair: psi = r (R^2 - r^2)(a^2 - z^2) solving the psi problem
/// with omega = 8 r (a^2 - z^2) + 2 r (R^2 - r^2); Gamma = omega / r.
double manufactured_psi(const Grid& g, double r, double z);
double manufactured_omega(const Grid& g, double r, double z);
double manufactured_gamma(const Grid& g, double r, double z);

}  // namespace axicyl
