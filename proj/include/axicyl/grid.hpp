/// @file grid.hpp
/// @brief Node-centered (r,z) discretization of the finite cylinder
///        {r < R, |z| < a} with cylindrical quadrature weights.

#pragma once

#include <Eigen/Core>
#include <memory>
#include <stdexcept>

namespace axicyl {

using Array2D = Eigen::ArrayXXd;  // indexed (i radial, j axial)

/// Thrown on invalid domain/discretization parameters and config rules.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniform collocated grid on [0,R] x [-a,a].
///
/// Nodes r_i = i*dr (axis node i=0 included), z_j = -a + j*dz.
/// quad_weights approximate the cylindrical volume measure 2*pi*r dr dz by
/// the trapezoid rule in both directions: w_ij = 2*pi * r_i * c_i * c_j * dr * dz
/// with c = 1/2 on boundary nodes. The axis node carries zero radial weight.
/// Immutable after construction; safe to share across threads.
class Grid {
public:
    Grid(double R, double a, int nr, int nz);

    double R = 0.0;   ///< cylinder radius
    double a = 0.0;   ///< half-height
    int nr = 0;       ///< radial cell count (nodes 0..nr)
    int nz = 0;       ///< axial cell count (nodes 0..nz)
    double dr = 0.0;
    double dz = 0.0;

    Eigen::ArrayXd r_coords;      ///< size nr+1, r_0 = 0, r_nr = R
    Eigen::ArrayXd z_coords;      ///< size nz+1, z_0 = -a, z_nz = a
    Array2D quad_weights;         ///< (nr+1) x (nz+1), sums to pi*R^2*2a

    double r(int i) const { return r_coords[i]; }
    double z(int j) const { return z_coords[j]; }
    double w(int i, int j) const { return quad_weights(i, j); }
    double volume() const { return quad_weights.sum(); }

    int nodes_r() const { return nr + 1; }
    int nodes_z() const { return nz + 1; }

    /// Trapezoid coefficient in r (1/2 at i=0 and i=nr).
    double cr(int i) const { return (i == 0 || i == nr) ? 0.5 : 1.0; }
    /// Trapezoid coefficient in z.
    double cz(int j) const { return (j == 0 || j == nz) ? 0.5 : 1.0; }

    /// 1-D trapezoid in z of a per-node sample at fixed r (used by the
    /// boundary line integrals of the elliptic estimates).
    double trapz_z(const Eigen::ArrayXd& samples) const;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Builds the grid; rejects nonpositive dimensions and counts < 8.
GridPtr build_grid(double R, double a, int nr, int nz);

}  // namespace axicyl
