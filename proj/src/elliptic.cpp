#include "axicyl/elliptic.hpp"

#include "axicyl/fieldops.hpp"

#include <cmath>
#include <functional>
#include <utility>

namespace axicyl {

int default_max_iterations(const Grid& g) { return 50 * (g.nr + g.nz); }

namespace {

using Apply = std::function<void(const Array2D&, Array2D&)>;

double wdot(const Array2D& w, const Array2D& u, const Array2D& v) {
    return (w * u * v).sum();
}

struct CgResult {
    Array2D x;
    int iterations;
    double residual;
    std::vector<double> history;
};

/// Preconditioned CG on the masked node set (weight w > 0 marks unknowns).
/// The operator must be symmetric w.r.t. <u,v> = sum w u v.
CgResult weighted_cg(const Apply& apply, const Array2D& w, const Array2D& diag,
                     const Array2D& b, double tol, int max_iter) {
    CgResult out;
    out.x = Array2D::Zero(b.rows(), b.cols());
    const double norm_b = std::sqrt(wdot(w, b, b));
    if (norm_b == 0.0) {
        out.iterations = 0;
        out.residual = 0.0;
        return out;
    }
    Array2D r = b;
    Array2D z = (w > 0.0).select(r / diag, Array2D::Zero(b.rows(), b.cols()));
    Array2D p = z;
    Array2D ap(b.rows(), b.cols());
    double rz = wdot(w, r, z);
    for (int k = 1; k <= max_iter; ++k) {
        apply(p, ap);
        const double alpha = rz / wdot(w, p, ap);
        out.x += alpha * p;
        r -= alpha * ap;
        const double res = std::sqrt(wdot(w, r, r)) / norm_b;
        out.history.push_back(res);
        if (res <= tol) {
            out.iterations = k;
            out.residual = res;
            return out;
        }
        z = (w > 0.0).select(r / diag, Array2D::Zero(b.rows(), b.cols()));
        const double rz_new = wdot(w, r, z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    throw EllipticError("elliptic solve did not converge within max_iterations",
                        out.history);
}

}  // namespace

ScalarField apply_psi_operator(const ScalarField& psi) {
    const Grid& g = psi.grid();
    const double dr = g.dr, dz = g.dz;
    ScalarField out(psi.grid_ptr(), Parity::Odd);
    for (int j = 1; j < g.nz; ++j)
        for (int i = 1; i < g.nr; ++i) {
            const double rp = g.r(i) + 0.5 * dr, rm = g.r(i) - 0.5 * dr;
            const double rad = (rp * (psi(i + 1, j) - psi(i, j)) -
                                rm * (psi(i, j) - psi(i - 1, j))) /
                               (g.r(i) * dr * dr);
            const double zz =
                (psi(i, j + 1) - 2.0 * psi(i, j) + psi(i, j - 1)) / (dz * dz);
            out(i, j) = -(rad + zz) + psi(i, j) / (g.r(i) * g.r(i));
        }
    return out;
}

ScalarField apply_psi1_operator(const ScalarField& psi1) {
    const Grid& g = psi1.grid();
    const double dr = g.dr, dz = g.dz;
    ScalarField out(psi1.grid_ptr(), Parity::Even);
    for (int j = 1; j < g.nz; ++j) {
        out(0, j) = 8.0 * (psi1(0, j) - psi1(1, j)) / (dr * dr) -
                    (psi1(0, j + 1) - 2.0 * psi1(0, j) + psi1(0, j - 1)) / (dz * dz);
        for (int i = 1; i < g.nr; ++i) {
            const double r3p = std::pow(g.r(i) + 0.5 * dr, 3);
            const double r3m = std::pow(g.r(i) - 0.5 * dr, 3);
            const double r3 = std::pow(g.r(i), 3);
            const double rad = (r3p * (psi1(i + 1, j) - psi1(i, j)) -
                                r3m * (psi1(i, j) - psi1(i - 1, j))) /
                               (r3 * dr * dr);
            const double zz =
                (psi1(i, j + 1) - 2.0 * psi1(i, j) + psi1(i, j - 1)) / (dz * dz);
            out(i, j) = -(rad + zz);
        }
    }
    return out;
}

EllipticSolution solve_psi(const ScalarField& omega_phi, double tol, int max_iter) {
    const Grid& g = omega_phi.grid();
    const GridPtr gp = omega_phi.grid_ptr();
    if (max_iter < 0) max_iter = default_max_iterations(g);
    const double dr = g.dr, dz = g.dz;
    const int nr = g.nr, nz = g.nz;

    Array2D w = Array2D::Zero(nr + 1, nz + 1);
    Array2D diag = Array2D::Ones(nr + 1, nz + 1);
    for (int j = 1; j < nz; ++j)
        for (int i = 1; i < nr; ++i) {
            w(i, j) = g.r(i);
            diag(i, j) = 2.0 / (dr * dr) + 2.0 / (dz * dz) + 1.0 / (g.r(i) * g.r(i));
        }

    Apply apply = [gp](const Array2D& in, Array2D& out) {
        ScalarField tmp(gp, Parity::Odd, in);
        out = apply_psi_operator(tmp).values();
    };

    CgResult cg = weighted_cg(apply, w, diag, omega_phi.values(), tol, max_iter);
    ScalarField psi(gp, Parity::Odd, std::move(cg.x));
    psi.enforce_axis();
    return {std::move(psi), cg.iterations, cg.residual};
}

EllipticSolution solve_psi1(const ScalarField& gamma, double tol, Psi1Route route,
                            int max_iter) {
    const Grid& g = gamma.grid();
    const GridPtr gp = gamma.grid_ptr();
    if (max_iter < 0) max_iter = default_max_iterations(g);

    if (route == Psi1Route::Substitution) {
        ScalarField omega(gp, Parity::Odd);
        for (int j = 0; j <= g.nz; ++j)
            for (int i = 0; i <= g.nr; ++i) omega(i, j) = g.r(i) * gamma(i, j);
        EllipticSolution psi = solve_psi(omega, tol, max_iter);
        ScalarField psi1 = divide_by_r(psi.field, Parity::Even);
        return {std::move(psi1), psi.iterations, psi.final_residual};
    }

    const double dr = g.dr, dz = g.dz;
    const int nr = g.nr, nz = g.nz;
    Array2D w = Array2D::Zero(nr + 1, nz + 1);
    Array2D diag = Array2D::Ones(nr + 1, nz + 1);
    for (int j = 1; j < nz; ++j) {
        w(0, j) = dr * dr * dr / 64.0;
        diag(0, j) = 8.0 / (dr * dr) + 2.0 / (dz * dz);
        for (int i = 1; i < nr; ++i) {
            const double r3p = std::pow(g.r(i) + 0.5 * dr, 3);
            const double r3m = std::pow(g.r(i) - 0.5 * dr, 3);
            const double r3 = std::pow(g.r(i), 3);
            w(i, j) = r3;
            diag(i, j) = (r3p + r3m) / (r3 * dr * dr) + 2.0 / (dz * dz);
        }
    }
    Apply apply = [gp](const Array2D& in, Array2D& out) {
        ScalarField tmp(gp, Parity::Even, in);
        out = apply_psi1_operator(tmp).values();
    };
    // Mask the rhs to unknown rows so the residual norm sees only them.
    Array2D b = gamma.values();
    CgResult cg = weighted_cg(apply, w, diag, b, tol, max_iter);
    ScalarField psi1(gp, Parity::Even, std::move(cg.x));
    return {std::move(psi1), cg.iterations, cg.residual};
}

}  // namespace axicyl
