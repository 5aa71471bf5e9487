/// @file forcing.hpp
/// @brief Analytic body force, heat source, and buoyancy-coefficient profile.
///
/// Forcing terms are closed-form functions of (r, z, t) so the curl of the
/// body force can be supplied exactly; grid-sampled forcing with a discrete
/// curl is also accepted (from_sampled).

#pragma once

#include "axicyl/field.hpp"

#include <functional>
#include <string>

namespace axicyl {

using SpaceTimeFn = std::function<double(double r, double z, double t)>;

/// Named coefficient profile alpha(theta) with derivative.
struct AlphaProfile {
    std::string name = "constant";  // constant | linear | sine
    double c0 = 1.0;

    double alpha(double theta) const;
    double dalpha(double theta) const;
};

struct SingularForcingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Forcing {
    SpaceTimeFn f_r, f_phi, f_z;  ///< momentum force (null = identically 0)
    SpaceTimeFn F_r, F_phi, F_z;  ///< curl of f, analytic
    SpaceTimeFn g;                ///< heat source, must be >= 0
    AlphaProfile alpha;

    static Forcing zero() { return Forcing{}; }

    bool has_f() const { return f_r || f_phi || f_z; }
    bool has_g() const { return static_cast<bool>(g); }

    /// Builds a forcing whose curl is taken discretely from sampled
    /// components (frozen at the sampling time).
    static Forcing from_sampled(const GridPtr& grid, const SpaceTimeFn& fr,
                                const SpaceTimeFn& fphi, const SpaceTimeFn& fz,
                                const SpaceTimeFn& g, AlphaProfile alpha,
                                double sample_time = 0.0);
};

/// Samples a component to the grid (zero field when fn is null).
ScalarField sample(const SpaceTimeFn& fn, const GridPtr& grid, Parity parity,
                   double t);

/// f0 = r*f_phi sampled to the grid.
ScalarField sample_f0(const Forcing& forcing, const GridPtr& grid, double t);

}  // namespace axicyl
