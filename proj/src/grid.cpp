#include "axicyl/grid.hpp"

#include <cmath>
#include <numbers>

namespace axicyl {

Grid::Grid(double R_, double a_, int nr_, int nz_)
    : R(R_), a(a_), nr(nr_), nz(nz_) {
    if (!(R > 0.0) || !(a > 0.0))
        throw ConfigError("grid: R and a must be positive");
    if (nr < 8 || nz < 8)
        throw ConfigError("grid: nr and nz must be at least 8");

    dr = R / nr;
    dz = 2.0 * a / nz;

    r_coords.resize(nr + 1);
    for (int i = 0; i <= nr; ++i) r_coords[i] = i * dr;
    r_coords[nr] = R;  // exact endpoint
    z_coords.resize(nz + 1);
    for (int j = 0; j <= nz; ++j) z_coords[j] = -a + j * dz;
    z_coords[nz] = a;

    quad_weights.resize(nr + 1, nz + 1);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j <= nz; ++j)
        for (int i = 0; i <= nr; ++i)
            quad_weights(i, j) = two_pi * r_coords[i] * cr(i) * cz(j) * dr * dz;
}

double Grid::trapz_z(const Eigen::ArrayXd& samples) const {
    double s = 0.0;
    for (int j = 0; j <= nz; ++j) s += cz(j) * samples[j];
    return s * dz;
}

GridPtr build_grid(double R, double a, int nr, int nz) {
    return std::make_shared<const Grid>(R, a, nr, nz);
}

}  // namespace axicyl
