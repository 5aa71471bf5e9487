/// @file field.hpp
/// @brief Scalar fields on the grid with an axis-parity tag.

#pragma once

#include "axicyl/grid.hpp"

#include <utility>

namespace axicyl {

/// Behavior under r -> -r, governing the ghost value at the axis.
/// Odd fields vanish at the axis node (v_r ~ a1*r, v_phi ~ b1*r, psi ~ d1*r);
/// Even fields have zero ghost slope there (psi1 ~ d1 + d2*r^2).
enum class Parity { Even, Odd };

class ScalarField {
public:
    ScalarField() = default;
    ScalarField(GridPtr grid, Parity parity)
        : grid_(std::move(grid)), parity_(parity) {
        vals_ = Array2D::Zero(grid_->nodes_r(), grid_->nodes_z());
    }
    ScalarField(GridPtr grid, Parity parity, Array2D values)
        : grid_(std::move(grid)), parity_(parity), vals_(std::move(values)) {}

    const Grid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    Parity parity() const { return parity_; }
    void set_parity(Parity p) { parity_ = p; }

    double operator()(int i, int j) const { return vals_(i, j); }
    double& operator()(int i, int j) { return vals_(i, j); }

    Array2D& values() { return vals_; }
    const Array2D& values() const { return vals_; }

    int nr() const { return grid_->nr; }
    int nz() const { return grid_->nz; }

    /// Samples f(r,z) onto the nodes.
    template <typename F>
    void fill(F&& f) {
        for (int j = 0; j <= nz(); ++j)
            for (int i = 0; i <= nr(); ++i)
                vals_(i, j) = f(grid_->r(i), grid_->z(j));
    }

    /// Pins the values an Odd field owes to its parity (axis node = 0).
    void enforce_axis() {
        if (parity_ == Parity::Odd) vals_.row(0).setZero();
    }

    bool has_nonfinite(int* bi = nullptr, int* bj = nullptr) const;

    /// Ghost value at r = -dr implied by the parity tag.
    double axis_ghost(int j) const {
        return parity_ == Parity::Odd ? -vals_(1, j) : vals_(1, j);
    }

private:
    GridPtr grid_;
    Parity parity_ = Parity::Even;
    Array2D vals_;
};

/// Axisymmetric vector field; component parities are forced by regularity
/// at the axis (r,phi odd; z even).
struct CylVectorField {
    ScalarField r;    // Odd
    ScalarField phi;  // Odd
    ScalarField z;    // Even

    CylVectorField() = default;
    explicit CylVectorField(const GridPtr& g)
        : r(g, Parity::Odd), phi(g, Parity::Odd), z(g, Parity::Even) {}
};

template <typename F>
ScalarField make_field(const GridPtr& g, Parity p, F&& f) {
    ScalarField out(g, p);
    out.fill(std::forward<F>(f));
    out.enforce_axis();
    return out;
}

}  // namespace axicyl
