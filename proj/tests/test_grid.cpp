#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "axicyl/grid.hpp"

#include <numbers>

using namespace axicyl;

TEST_CASE("spacing arithmetic") {
    // nr=4 is below the build_grid minimum; the spacing rule itself is what
    // the example pins, so check it on an admissible grid.
    auto g = build_grid(1.0, 1.0, 8, 8);
    CHECK(g->dr == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(g->dz == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g->r(0) == 0.0);
    CHECK(g->r(g->nr) == 1.0);
    CHECK(g->z(0) == -1.0);
    CHECK(g->z(g->nz) == 1.0);
}

TEST_CASE("weights integrate the cylinder volume exactly") {
    const double pi = std::numbers::pi;
    for (auto [nr, nz] : {std::pair{8, 8}, {16, 32}, {33, 17}}) {
        auto g = build_grid(1.0, 1.0, nr, nz);
        CHECK(g->volume() == doctest::Approx(2.0 * pi).epsilon(1e-12));
    }
    auto g2 = build_grid(2.0, 0.5, 24, 24);
    CHECK(g2->volume() == doctest::Approx(4.0 * pi).epsilon(1e-12));
}

TEST_CASE("weights are nonnegative, zero at the axis") {
    auto g = build_grid(1.5, 0.7, 12, 10);
    CHECK((g->quad_weights >= 0.0).all());
    for (int j = 0; j <= g->nz; ++j) CHECK(g->w(0, j) == 0.0);
}

TEST_CASE("f = z integrates to zero by symmetry") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    double s = 0.0;
    for (int j = 0; j <= g->nz; ++j)
        for (int i = 0; i <= g->nr; ++i) s += g->w(i, j) * g->z(j);
    CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("refinement leaves exactly-integrated polynomials unchanged") {
    // The trapezoid rule with the r measure weight integrates a + b*z exactly
    // (integrands r and r*z are linear in each direction).
    auto coarse = build_grid(1.0, 1.0, 16, 16);
    auto fine = build_grid(1.0, 1.0, 32, 32);
    auto integ = [](const Grid& g, auto f) {
        double s = 0.0;
        for (int j = 0; j <= g.nz; ++j)
            for (int i = 0; i <= g.nr; ++i) s += g.w(i, j) * f(g.r(i), g.z(j));
        return s;
    };
    auto f = [](double, double z) { return 2.0 - 0.25 * z; };
    CHECK(integ(*coarse, f) == doctest::Approx(integ(*fine, f)).epsilon(1e-12));
}

TEST_CASE("rejects bad parameters") {
    CHECK_THROWS_AS(build_grid(-1.0, 1.0, 16, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, 0.0, 16, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 4, 16), ConfigError);
    CHECK_THROWS_AS(build_grid(1.0, 1.0, 16, 7), ConfigError);
}
