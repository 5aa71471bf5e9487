#include "axicyl/forcing.hpp"

#include "axicyl/fieldops.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace axicyl {

double AlphaProfile::alpha(double theta) const {
    if (name == "constant") return c0;
    if (name == "linear") return c0 * theta;
    if (name == "sine") return c0 * std::sin(theta);
    throw ConfigError("unknown alpha profile '" + name + "'");
}

double AlphaProfile::dalpha(double theta) const {
    if (name == "constant") return 0.0;
    if (name == "linear") return c0;
    if (name == "sine") return c0 * std::cos(theta);
    throw ConfigError("unknown alpha profile '" + name + "'");
}

ScalarField sample(const SpaceTimeFn& fn, const GridPtr& grid, Parity parity,
                   double t) {
    ScalarField out(grid, parity);
    if (fn)
        for (int j = 0; j <= grid->nz; ++j)
            for (int i = 0; i <= grid->nr; ++i)
                out(i, j) = fn(grid->r(i), grid->z(j), t);
    return out;
}

ScalarField sample_f0(const Forcing& forcing, const GridPtr& grid, double t) {
    ScalarField out(grid, Parity::Even);
    if (forcing.f_phi)
        for (int j = 0; j <= grid->nz; ++j)
            for (int i = 0; i <= grid->nr; ++i)
                out(i, j) = grid->r(i) * forcing.f_phi(grid->r(i), grid->z(j), t);
    return out;
}

Forcing Forcing::from_sampled(const GridPtr& grid, const SpaceTimeFn& fr,
                              const SpaceTimeFn& fphi, const SpaceTimeFn& fz,
                              const SpaceTimeFn& g, AlphaProfile alpha,
                              double sample_time) {
    Forcing out;
    out.f_r = fr;
    out.f_phi = fphi;
    out.f_z = fz;
    out.g = g;
    out.alpha = alpha;
    CylVectorField f(grid);
    f.r = sample(fr, grid, Parity::Odd, sample_time);
    f.phi = sample(fphi, grid, Parity::Odd, sample_time);
    f.z = sample(fz, grid, Parity::Even, sample_time);
    auto curl = std::make_shared<CylVectorField>(curl_cyl(f));
    auto lookup = [grid](const ScalarField& fld, double r, double z) {
        const int i = static_cast<int>(std::lround(r / grid->dr));
        const int j = static_cast<int>(std::lround((z + grid->a) / grid->dz));
        return fld(std::clamp(i, 0, grid->nr), std::clamp(j, 0, grid->nz));
    };
    out.F_r = [curl, lookup](double r, double z, double) {
        return lookup(curl->r, r, z);
    };
    out.F_phi = [curl, lookup](double r, double z, double) {
        return lookup(curl->phi, r, z);
    };
    out.F_z = [curl, lookup](double r, double z, double) {
        return lookup(curl->z, r, z);
    };
    return out;
}

}  // namespace axicyl
