#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "axicyl/scenarios.hpp"

#include <cmath>

using namespace axicyl;

TEST_CASE("all built-ins validate at t = 0") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    for (const char* name : {"zero", "decaying_swirl", "heated_swirl",
                             "buoyant_cell", "manufactured_elliptic"}) {
        auto sc = make_scenario(name, g);
        CHECK(sc.name == name);
        CHECK(sc.theta0.values().minCoeff() > 0.0);
    }
}

TEST_CASE("zero scenario is a fixed point of the dynamics") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    DynamicsConfig cfg;
    auto sc = make_scenario("zero", g);
    auto s = make_state(g, sc.u0, sc.omega0, sc.theta0, cfg);
    for (double dt : {1e-4, 1e-3}) {
        step(s, sc.forcing, dt, cfg);
        CHECK(s.u.values().abs().maxCoeff() == 0.0);
        CHECK(s.omega_phi.values().abs().maxCoeff() == 0.0);
        CHECK((s.theta.values() - 1.0).abs().maxCoeff() == 0.0);
    }
}

TEST_CASE("decaying_swirl profile compatibility") {
    auto g = build_grid(1.0, 1.0, 32, 32);
    auto sc = make_scenario("decaying_swirl", g);
    for (int j = 0; j <= g->nz; ++j) CHECK(sc.u0(g->nr, j) == 0.0);
    // O(r^2) vanishing at the axis.
    for (int j = 0; j <= g->nz; ++j) {
        CHECK(sc.u0(0, j) == 0.0);
        CHECK(std::abs(sc.u0(1, j)) <= 8.0 * g->dr * g->dr);
    }
    // u0_z = 0 on S2 (one-sided second-order derivative, O(h^2) small).
    for (int i = 0; i <= g->nr; ++i) {
        const double d = (3.0 * sc.u0(i, g->nz) - 4.0 * sc.u0(i, g->nz - 1) +
                          sc.u0(i, g->nz - 2)) /
                         (2.0 * g->dz);
        CHECK(std::abs(d) <= 0.05);
    }
    CHECK(sc.u0.values().abs().maxCoeff() == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("heated_swirl rejects a negative heat source") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    CHECK_THROWS_AS(make_scenario("heated_swirl", g, {{"g0", -0.1}}), ConfigError);
}

TEST_CASE("unknown names and overrides are rejected") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    CHECK_THROWS_AS(make_scenario("vortex_soup", g), ConfigError);
    CHECK_THROWS_AS(make_scenario("zero", g, {{"vorticity", 1.0}}), ConfigError);
}

TEST_CASE("overrides rescale the built-in profiles") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    auto a = make_scenario("decaying_swirl", g);
    auto b = make_scenario("decaying_swirl", g, {{"amplitude", 0.5}});
    CHECK((b.u0.values() - 0.5 * a.u0.values()).abs().maxCoeff() < 1e-15);
}

TEST_CASE("alpha_phi_bound") {
    SUBCASE("constant profile") {
        CHECK(alpha_phi_bound(AlphaProfile{"constant", -2.0}, 1.0, 2.0) ==
              doctest::Approx(2.0 * 1.001).epsilon(1e-12));
    }
    SUBCASE("linear profile on [1, 2]") {
        CHECK(alpha_phi_bound(AlphaProfile{"linear", 1.0}, 1.0, 2.0) ==
              doctest::Approx(3.0 * 1.001).epsilon(1e-12));
    }
    SUBCASE("sine profile on [0, pi]: sup(|sin|+|cos|) = sqrt(2)") {
        CHECK(alpha_phi_bound(AlphaProfile{"sine", 1.0}, 0.0, 3.14159265358979) ==
              doctest::Approx(std::sqrt(2.0) * 1.001).epsilon(1e-4));
    }
}

TEST_CASE("heated_swirl forcing vanishes like O(r) at the axis") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    auto sc = make_scenario("heated_swirl", g, {{"fphi_amp", 0.2}});
    for (double z : {-0.7, 0.0, 0.4}) {
        CHECK(sc.forcing.f_r(0.0, z, 0.0) == 0.0);
        CHECK(sc.forcing.f_phi(0.0, z, 0.0) == 0.0);
        CHECK(sc.forcing.F_phi(0.0, z, 0.0) == 0.0);
        CHECK(std::abs(sc.forcing.f_r(g->dr, z, 0.0)) <= 2.0 * g->dr);
    }
}

TEST_CASE("grid-sampled forcing yields the discrete curl") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    auto fphi = [](double r, double, double) { return r; };
    auto f = Forcing::from_sampled(g, nullptr, fphi, nullptr, nullptr,
                                   AlphaProfile{"constant", 1.0});
    // curl of (0, r, 0) is (0, 0, 2); sampled lookup reproduces it.
    CHECK(f.F_z(0.5, 0.25, 0.0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f.F_r(0.5, 0.25, 0.0) == doctest::Approx(0.0));
    CHECK(f.F_phi(0.5, 0.25, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("manufactured pair satisfies the stated algebra") {
    auto g = build_grid(1.0, 1.0, 16, 16);
    CHECK(manufactured_psi(*g, 0.5, 0.0) == doctest::Approx(0.375));
    CHECK(manufactured_omega(*g, 0.5, 0.0) == doctest::Approx(4.75));
    CHECK(manufactured_gamma(*g, 0.5, 0.0) == doctest::Approx(9.5));
}
