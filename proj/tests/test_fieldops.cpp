#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "axicyl/fieldops.hpp"

#include <cmath>

using namespace axicyl;

namespace {

double max_abs_interior(const ScalarField& f, int skip_axis = 1) {
    double m = 0.0;
    for (int j = 1; j < f.nz(); ++j)
        for (int i = skip_axis; i < f.nr(); ++i)
            m = std::max(m, std::abs(f(i, j)));
    return m;
}

double max_abs_all(const ScalarField& f) {
    return f.values().abs().maxCoeff();
}

}  // namespace

TEST_CASE("ddr exact on low-degree fields") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    SUBCASE("f = r (odd) -> 1 everywhere") {
        auto f = make_field(g, Parity::Odd, [](double r, double) { return r; });
        auto d = ddr(f);
        CHECK(d.parity() == Parity::Even);
        CHECK(max_abs_all(ScalarField(g, Parity::Even, d.values() - 1.0)) < 1e-13);
    }
    SUBCASE("f = r^2 (even) -> 2r at interior") {
        auto f = make_field(g, Parity::Even, [](double r, double) { return r * r; });
        auto d = ddr(f);
        CHECK(d.parity() == Parity::Odd);
        for (int j = 0; j <= g->nz; ++j)
            for (int i = 0; i <= g->nr; ++i)
                CHECK(d(i, j) == doctest::Approx(2.0 * g->r(i)).epsilon(1e-12));
    }
    SUBCASE("constant -> 0") {
        auto f = make_field(g, Parity::Even, [](double, double) { return 3.5; });
        CHECK(max_abs_all(ddr(f)) < 1e-13);
    }
}

TEST_CASE("ddz exact on low-degree fields") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    auto fz = make_field(g, Parity::Even, [](double, double z) { return z; });
    CHECK(max_abs_all(ScalarField(g, Parity::Even, ddz(fz).values() - 1.0)) < 1e-13);

    auto fz2 = make_field(g, Parity::Even, [](double, double z) { return z * z; });
    auto d = ddz(fz2);
    for (int j = 0; j <= g->nz; ++j)
        CHECK(d(3, j) == doctest::Approx(2.0 * g->z(j)).epsilon(1e-12));

    auto fr = make_field(g, Parity::Odd, [](double r, double) { return r; });
    CHECK(max_abs_all(ddz(fr)) < 1e-13);
}

TEST_CASE("laplacian_cyl exact on quadratics") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    SUBCASE("f = r^2 -> 4 at every node") {
        auto f = make_field(g, Parity::Even, [](double r, double) { return r * r; });
        auto L = laplacian_cyl(f);
        for (int j = 0; j <= g->nz; ++j)
            for (int i = 0; i <= g->nr; ++i)
                CHECK(L(i, j) == doctest::Approx(4.0).epsilon(1e-11));
    }
    SUBCASE("f = z^2 -> 2") {
        auto f = make_field(g, Parity::Even, [](double, double z) { return z * z; });
        auto L = laplacian_cyl(f);
        for (int j = 0; j <= g->nz; ++j)
            for (int i = 0; i <= g->nr; ++i)
                CHECK(L(i, j) == doctest::Approx(2.0).epsilon(1e-11));
    }
    SUBCASE("f = r^2 z -> 4z at interior") {
        auto f = make_field(g, Parity::Even, [](double r, double z) { return r * r * z; });
        auto L = laplacian_cyl(f);
        for (int j = 1; j < g->nz; ++j)
            for (int i = 1; i < g->nr; ++i)
                CHECK(L(i, j) == doctest::Approx(4.0 * g->z(j)).epsilon(1e-10));
    }
}

TEST_CASE("advect examples") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    auto vr0 = make_field(g, Parity::Odd, [](double, double) { return 0.0; });
    auto vz1 = make_field(g, Parity::Even, [](double, double) { return 1.0; });
    auto fz = make_field(g, Parity::Even, [](double, double z) { return z; });
    auto a = advect(vr0, vz1, fz, AdvectionScheme::Central2);
    CHECK(max_abs_all(ScalarField(g, Parity::Even, a.values() - 1.0)) < 1e-13);

    auto vrr = make_field(g, Parity::Odd, [](double r, double) { return r; });
    auto vz0 = make_field(g, Parity::Even, [](double, double) { return 0.0; });
    auto fr2 = make_field(g, Parity::Even, [](double r, double) { return r * r; });
    auto b = advect(vrr, vz0, fr2, AdvectionScheme::Central2);
    for (int j = 0; j <= g->nz; ++j)
        for (int i = 0; i <= g->nr; ++i)
            CHECK(b(i, j) == doctest::Approx(2.0 * g->r(i) * g->r(i)).epsilon(1e-12));

    auto fc = make_field(g, Parity::Even, [](double, double) { return 2.0; });
    for (auto scheme : {AdvectionScheme::Central2, AdvectionScheme::Upwind1}) {
        auto c = advect(vrr, vz1, fc, scheme);
        CHECK(max_abs_all(c) < 1e-13);
    }

    // Upwind differences are exact on linear fields too.
    auto d = advect(vr0, vz1, fz, AdvectionScheme::Upwind1);
    CHECK(max_abs_all(ScalarField(g, Parity::Even, d.values() - 1.0)) < 1e-13);
}

TEST_CASE("velocity_from_psi examples") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    SUBCASE("psi = c r") {
        const double c = 0.7;
        auto psi = make_field(g, Parity::Odd, [&](double r, double) { return c * r; });
        auto [vr, vz] = velocity_from_psi(psi);
        CHECK(max_abs_all(vr) < 1e-13);
        CHECK(max_abs_all(ScalarField(g, Parity::Even, vz.values() - 2.0 * c)) < 1e-12);
    }
    SUBCASE("psi = r z: v = (-r, 2z), div exactly zero") {
        auto psi = make_field(g, Parity::Odd, [](double r, double z) { return r * z; });
        auto [vr, vz] = velocity_from_psi(psi);
        for (int j = 0; j <= g->nz; ++j)
            for (int i = 0; i <= g->nr; ++i) {
                CHECK(vr(i, j) == doctest::Approx(-g->r(i)).epsilon(1e-12));
                CHECK(vz(i, j) == doctest::Approx(2.0 * g->z(j)).epsilon(1e-12));
            }
        CHECK(max_abs_all(divergence_cyl(vr, vz)) < 1e-11);
    }
    SUBCASE("psi = 0") {
        ScalarField psi(g, Parity::Odd);
        auto [vr, vz] = velocity_from_psi(psi);
        CHECK(max_abs_all(vr) == 0.0);
        CHECK(max_abs_all(vz) == 0.0);
    }
}

TEST_CASE("curl_cyl examples") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    CylVectorField F(g);
    SUBCASE("F = (0, r, 0) -> (0, 0, 2)") {
        F.phi.fill([](double r, double) { return r; });
        auto c = curl_cyl(F);
        CHECK(max_abs_all(c.r) < 1e-13);
        CHECK(max_abs_all(c.phi) < 1e-13);
        CHECK(max_abs_all(ScalarField(g, Parity::Even, c.z.values() - 2.0)) < 1e-12);
    }
    SUBCASE("F = (z, 0, 0) -> (0, 1, 0)") {
        F.r.fill([](double, double z) { return z; });
        auto c = curl_cyl(F);
        CHECK(max_abs_all(c.r) < 1e-13);
        CHECK(max_abs_all(ScalarField(g, Parity::Odd, c.phi.values() - 1.0)) < 1e-12);
        CHECK(max_abs_all(c.z) < 1e-13);
    }
    SUBCASE("F = (0, 0, f(z)) -> 0") {
        F.z.fill([](double, double z) { return std::sin(z); });
        auto c = curl_cyl(F);
        CHECK(max_abs_all(c.r) < 1e-13);
        CHECK(max_abs_all(c.phi) < 1e-13);
        CHECK(max_abs_all(c.z) < 1e-13);
    }
}

TEST_CASE("divergence_cyl examples") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    auto vr = make_field(g, Parity::Odd, [](double r, double) { return -r; });
    auto vz = make_field(g, Parity::Even, [](double, double z) { return 2.0 * z; });
    CHECK(max_abs_all(divergence_cyl(vr, vz)) < 1e-11);

    auto vr0 = make_field(g, Parity::Odd, [](double, double) { return 0.0; });
    auto vzz = make_field(g, Parity::Even, [](double, double z) { return z; });
    auto d = divergence_cyl(vr0, vzz);
    CHECK(max_abs_all(ScalarField(g, Parity::Even, d.values() - 1.0)) < 1e-12);
}

TEST_CASE("parity discipline") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    auto f = make_field(g, Parity::Odd,
                        [](double r, double z) { return r * (1 - r * r) * std::cos(z); });
    CHECK(ddr(f).parity() == Parity::Even);
    CHECK(ddr(ddr(f)).parity() == Parity::Odd);
    CHECK(ddz(f).parity() == Parity::Odd);
    auto e = make_field(g, Parity::Even, [](double r, double z) { return r * r + z; });
    CHECK(ddr(e).parity() == Parity::Odd);
    CHECK(ddz(e).parity() == Parity::Even);
}

TEST_CASE("stream-function velocity is discretely solenoidal") {
    // The r- and z-stencils are tensor-product operators, so the discrete
    // divergence of the recovered velocity cancels to roundoff — well inside
    // the O(h^2) envelope the contract asks for.
    for (int n : {16, 32}) {
        auto g = build_grid(1.0, 1.0, n, n);
        auto psi = make_field(g, Parity::Odd, [](double r, double z) {
            return r * z * (1.0 - r * r) * (1.0 + 0.2 * std::sin(2.0 * z + r));
        });
        auto [vr, vz] = velocity_from_psi(psi);
        CHECK(max_abs_all(divergence_cyl(vr, vz)) < 1e-11);
    }
}

TEST_CASE("curl of swirl velocity reproduces the scaled swirl gradients") {
    // v = (v_r, u/r, v_z) from (psi, u); curl components must match
    // omega_r = -u_z/r and omega_z = u_r/r to O(h^2).
    auto err = [](int n) {
        auto g = build_grid(1.0, 1.0, n, n);
        auto psi = make_field(g, Parity::Odd, [](double r, double z) {
            return r * (1.0 - r * r) * (1.0 - z * z);
        });
        auto u = make_field(g, Parity::Odd, [](double r, double z) {
            return r * r * (1.0 - r) * (1.0 + 0.3 * std::sin(z));
        });
        CylVectorField v(g);
        auto [vr, vz] = velocity_from_psi(psi);
        v.r = vr;
        v.z = vz;
        v.phi = divide_by_r(u, Parity::Odd);
        auto c = curl_cyl(v);
        auto omr = divide_by_r(ddz(u), Parity::Odd);
        auto omz = divide_by_r(ddr(u), Parity::Even);
        // Both routes divide O(h^2) derivatives by r, so the first ring is
        // first-order pointwise; measure the closure away from the axis and
        // in the volume norm, where it is second order.
        double e = 0.0, l2 = 0.0;
        for (int j = 1; j < g->nz; ++j)
            for (int i = 1; i < g->nr; ++i) {
                const double dr_err = std::abs(c.r(i, j) + omr(i, j));
                const double dz_err = std::abs(c.z(i, j) - omz(i, j));
                if (g->r(i) >= 0.25) e = std::max(e, std::max(dr_err, dz_err));
                l2 += g->w(i, j) * (dr_err * dr_err + dz_err * dz_err);
            }
        return std::pair{e, std::sqrt(l2)};
    };
    const auto [c_max, c_l2] = err(16);
    const auto [f_max, f_l2] = err(32);
    CHECK(c_max / f_max >= 3.0);
    CHECK(c_l2 / f_l2 >= 3.0);
}

TEST_CASE("first derivatives exact on degree-2 polynomials at interior") {
    auto g = build_grid(1.0, 1.0, 12, 12);
    auto f = make_field(g, Parity::Even,
                        [](double r, double z) { return 1.0 + r * r + z * z + r * r * z; });
    auto dr_ = ddr(f), dz_ = ddz(f);
    for (int j = 1; j < g->nz; ++j)
        for (int i = 1; i < g->nr; ++i) {
            CHECK(dr_(i, j) ==
                  doctest::Approx(2.0 * g->r(i) + 2.0 * g->r(i) * g->z(j)).epsilon(1e-11));
            CHECK(dz_(i, j) ==
                  doctest::Approx(2.0 * g->z(j) + g->r(i) * g->r(i)).epsilon(1e-11));
        }
    (void)max_abs_interior;
}
