#include "axicyl/fieldops.hpp"

#include <cmath>

namespace axicyl {

namespace {
Parity flip(Parity p) { return p == Parity::Odd ? Parity::Even : Parity::Odd; }
}  // namespace

bool ScalarField::has_nonfinite(int* bi, int* bj) const {
    for (int j = 0; j <= nz(); ++j)
        for (int i = 0; i <= nr(); ++i)
            if (!std::isfinite(vals_(i, j))) {
                if (bi) *bi = i;
                if (bj) *bj = j;
                return true;
            }
    return false;
}

ScalarField ddr(const ScalarField& f) {
    const Grid& g = f.grid();
    const double dr = g.dr;
    ScalarField out(f.grid_ptr(), flip(f.parity()));
    const int nr = g.nr, nz = g.nz;
    for (int j = 0; j <= nz; ++j) {
        out(0, j) = (f(1, j) - f.axis_ghost(j)) / (2.0 * dr);
        for (int i = 1; i < nr; ++i)
            out(i, j) = (f(i + 1, j) - f(i - 1, j)) / (2.0 * dr);
        out(nr, j) = (3.0 * f(nr, j) - 4.0 * f(nr - 1, j) + f(nr - 2, j)) / (2.0 * dr);
    }
    return out;
}

ScalarField ddz(const ScalarField& f) {
    const Grid& g = f.grid();
    const double dz = g.dz;
    ScalarField out(f.grid_ptr(), f.parity());
    const int nr = g.nr, nz = g.nz;
    for (int i = 0; i <= nr; ++i) {
        out(i, 0) = (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * dz);
        out(i, nz) = (3.0 * f(i, nz) - 4.0 * f(i, nz - 1) + f(i, nz - 2)) / (2.0 * dz);
    }
    for (int j = 1; j < nz; ++j)
        for (int i = 0; i <= nr; ++i)
            out(i, j) = (f(i, j + 1) - f(i, j - 1)) / (2.0 * dz);
    return out;
}

ScalarField divide_by_r(const ScalarField& f, Parity out_parity) {
    const Grid& g = f.grid();
    ScalarField out(f.grid_ptr(), out_parity);
    for (int j = 0; j <= g.nz; ++j) {
        // Axis value is the one-sided derivative of a field vanishing at r=0,
        // exact through r^3 numerators (limit of f/r).
        out(0, j) = (18.0 * f(1, j) - 9.0 * f(2, j) + 2.0 * f(3, j)) / (6.0 * g.dr);
        for (int i = 1; i <= g.nr; ++i) out(i, j) = f(i, j) / g.r(i);
    }
    return out;
}

namespace {

/// One-sided second derivative, exact on quadratics:
/// (2 f0 - 5 f1 + 4 f2 - f3) / h^2 with f0 the boundary node.
inline double one_sided_d2(double f0, double f1, double f2, double f3, double h) {
    return (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) / (h * h);
}

double d2z_at(const ScalarField& f, int i, int j) {
    const Grid& g = f.grid();
    const double dz = g.dz;
    if (j == 0) return one_sided_d2(f(i, 0), f(i, 1), f(i, 2), f(i, 3), dz);
    if (j == g.nz)
        return one_sided_d2(f(i, g.nz), f(i, g.nz - 1), f(i, g.nz - 2), f(i, g.nz - 3), dz);
    return (f(i, j + 1) - 2.0 * f(i, j) + f(i, j - 1)) / (dz * dz);
}

}  // namespace

ScalarField laplacian_cyl(const ScalarField& f) {
    const Grid& g = f.grid();
    const double dr = g.dr;
    const int nr = g.nr, nz = g.nz;
    ScalarField out(f.grid_ptr(), f.parity());
    for (int j = 0; j <= nz; ++j) {
        if (f.parity() == Parity::Even)
            out(0, j) = 4.0 * (f(1, j) - f(0, j)) / (dr * dr) + d2z_at(f, 0, j);
        else
            out(0, j) = 0.0;  // Odd: axis value pinned, row not evaluated
        for (int i = 1; i < nr; ++i) {
            const double rp = g.r(i) + 0.5 * dr, rm = g.r(i) - 0.5 * dr;
            const double rad = (rp * (f(i + 1, j) - f(i, j)) - rm * (f(i, j) - f(i - 1, j))) /
                               (g.r(i) * dr * dr);
            out(i, j) = rad + d2z_at(f, i, j);
        }
        const double frr =
            one_sided_d2(f(nr, j), f(nr - 1, j), f(nr - 2, j), f(nr - 3, j), dr);
        const double fr = (3.0 * f(nr, j) - 4.0 * f(nr - 1, j) + f(nr - 2, j)) / (2.0 * dr);
        out(nr, j) = frr + fr / g.R + d2z_at(f, nr, j);
    }
    return out;
}

ScalarField advect(const ScalarField& v_r, const ScalarField& v_z,
                   const ScalarField& f, AdvectionScheme scheme) {
    const Grid& g = f.grid();
    ScalarField out(f.grid_ptr(), f.parity());
    if (scheme == AdvectionScheme::Central2) {
        ScalarField fr = ddr(f), fz = ddz(f);
        out.values() = v_r.values() * fr.values() + v_z.values() * fz.values();
        return out;
    }
    const double dr = g.dr, dz = g.dz;
    const int nr = g.nr, nz = g.nz;
    auto ghost_m1 = [&](int j) { return f.axis_ghost(j); };
    for (int j = 0; j <= nz; ++j) {
        for (int i = 0; i <= nr; ++i) {
            const double ar = v_r(i, j), az = v_z(i, j);
            double dfr;
            if (ar >= 0.0)
                dfr = (i > 0) ? (f(i, j) - f(i - 1, j)) / dr : (f(0, j) - ghost_m1(j)) / dr;
            else
                dfr = (i < nr) ? (f(i + 1, j) - f(i, j)) / dr : (f(nr, j) - f(nr - 1, j)) / dr;
            double dfz;
            if (az >= 0.0)
                dfz = (j > 0) ? (f(i, j) - f(i, j - 1)) / dz : (f(i, 1) - f(i, 0)) / dz;
            else
                dfz = (j < nz) ? (f(i, j + 1) - f(i, j)) / dz : (f(i, nz) - f(i, nz - 1)) / dz;
            out(i, j) = ar * dfr + az * dfz;
        }
    }
    return out;
}

std::pair<ScalarField, ScalarField> velocity_from_psi(const ScalarField& psi) {
    ScalarField vr = ddz(psi);
    vr.values() = -vr.values();
    vr.set_parity(Parity::Odd);
    ScalarField vz = ddr(psi);
    vz.values() += divide_by_r(psi, Parity::Even).values();
    vz.set_parity(Parity::Even);
    return {std::move(vr), std::move(vz)};
}

CylVectorField curl_cyl(const CylVectorField& F) {
    CylVectorField out(F.r.grid_ptr());
    out.r = ddz(F.phi);
    out.r.values() = -out.r.values();
    out.r.set_parity(Parity::Odd);

    ScalarField frz = ddz(F.r), fzr = ddr(F.z);
    out.phi = ScalarField(F.r.grid_ptr(), Parity::Odd);
    out.phi.values() = frz.values() - fzr.values();

    out.z = ddr(F.phi);
    out.z.values() += divide_by_r(F.phi, Parity::Even).values();
    out.z.set_parity(Parity::Even);
    return out;
}

ScalarField divergence_cyl(const ScalarField& v_r, const ScalarField& v_z) {
    ScalarField out = ddr(v_r);
    out.values() += divide_by_r(v_r, Parity::Even).values();
    out.values() += ddz(v_z).values();
    out.set_parity(Parity::Even);
    return out;
}

}  // namespace axicyl
