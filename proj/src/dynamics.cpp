#include "axicyl/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace axicyl {

namespace {

/// Radial face positions rho_k = dr*sqrt((k-1)k) between nodes k-1 and k
/// (k = 1..nr); rho_1 = 0, so no flux crosses into the zero-mass axis node.
/// The cell [rho_i, rho_{i+1}] around node i has r-measure exactly r_i*cr_i*dr.
struct FaceGeometry {
    explicit FaceGeometry(const Grid& g) {
        rc.resize(g.nr + 2);
        lam.resize(g.nr + 2);
        tau.resize(g.nr + 1);
        rc[0] = 0.0;
        for (int k = 1; k <= g.nr; ++k) {
            rc[k] = g.dr * std::sqrt(double(k - 1) * double(k));
            lam[k] = rc[k] / g.dr - double(k - 1);
        }
        rc[g.nr + 1] = g.R;
        tau[0] = 0.0;
        for (int k = 1; k <= g.nr; ++k) {
            const double r_mid = (double(k) - 0.5) * g.dr;
            tau[k] = rc[k] * rc[k] / (r_mid * g.dr);
        }
    }
    Eigen::ArrayXd rc;   // face radii, index k = 0..nr+1 (nr+1 is the wall)
    Eigen::ArrayXd lam;  // interpolation weight of node k at face k
    Eigen::ArrayXd tau;  // diffusion transmissibility factor at face k
};

const FaceGeometry& face_geometry(const Grid& g) {
    thread_local int cached_nr = -1;
    thread_local double cached_R = -1.0;
    thread_local std::unique_ptr<FaceGeometry> geom;
    if (!geom || cached_nr != g.nr || cached_R != g.R) {
        geom = std::make_unique<FaceGeometry>(g);
        cached_nr = g.nr;
        cached_R = g.R;
    }
    return *geom;
}

/// Volume fluxes (per 2*pi) through the cell faces, obtained as corner
/// differences of r*psi. Each cell's four signed fluxes sum to zero exactly,
/// and all fluxes through S and through the axis vanish with psi|_S = 0.
struct FaceFluxes {
    Array2D qr;  // (nr+2) x (nz+1): +r flux through face k at cell row j
    Array2D qz;  // (nr+1) x (nz+2): +z flux through face level m at cell col i

    FaceFluxes(const Grid& g, const ScalarField& psi) {
        const FaceGeometry& geo = face_geometry(g);
        const int nr = g.nr, nz = g.nz;
        // Row interpolant of P = r*psi at face radius rc[k].
        Array2D Q(nr + 2, nz + 1);
        for (int j = 0; j <= nz; ++j) {
            Q(0, j) = 0.0;
            for (int k = 1; k <= nr; ++k) {
                const double pm = g.r(k - 1) * psi(k - 1, j);
                const double pp = g.r(k) * psi(k, j);
                Q(k, j) = (1.0 - geo.lam[k]) * pm + geo.lam[k] * pp;
            }
            Q(nr + 1, j) = g.R * psi(nr, j);
        }
        // Corner values C(k, m), m = 0..nz+1 (m = 0 and nz+1 lie on S_2).
        Array2D C(nr + 2, nz + 2);
        for (int k = 0; k <= nr + 1; ++k) {
            C(k, 0) = Q(k, 0);
            for (int m = 1; m <= nz; ++m) C(k, m) = 0.5 * (Q(k, m - 1) + Q(k, m));
            C(k, nz + 1) = Q(k, nz);
        }
        qr.resize(nr + 2, nz + 1);
        for (int k = 0; k <= nr + 1; ++k)
            for (int j = 0; j <= nz; ++j) qr(k, j) = -(C(k, j + 1) - C(k, j));
        qz.resize(nr + 1, nz + 2);
        for (int i = 0; i <= nr; ++i)
            for (int m = 0; m <= nz + 1; ++m) qz(i, m) = C(i + 1, m) - C(i, m);
    }
};

double cell_mass(const Grid& g, int i, int j) {
    return g.r(i) * g.cr(i) * g.cz(j) * g.dr * g.dz;
}

inline double face_value(double q, double left, double right, AdvectionScheme s) {
    if (s == AdvectionScheme::Upwind1) return q >= 0.0 ? q * left : q * right;
    return q * 0.5 * (left + right);
}

/// Flux-form v.grad(f) over the massive cells i in [1, i_max], all j.
/// Values outside that band are left at zero.
ScalarField advect_flux_form(const SimState& s, const ScalarField& f,
                             AdvectionScheme scheme, int i_max) {
    const Grid& g = f.grid();
    const int nr = g.nr, nz = g.nz;
    FaceFluxes flux(g, s.psi);
    ScalarField out(f.grid_ptr(), f.parity());
    for (int j = 0; j <= nz; ++j)
        for (int i = 1; i <= i_max; ++i) {
            const double fE = (i < nr) ? f(i + 1, j) : 0.0;
            const double fW = f(i - 1, j);
            const double fN = (j < nz) ? f(i, j + 1) : 0.0;
            const double fS = (j > 0) ? f(i, j - 1) : 0.0;
            double net = face_value(flux.qr(i + 1, j), f(i, j), fE, scheme) -
                         face_value(flux.qr(i, j), fW, f(i, j), scheme);
            net += face_value(flux.qz(i, j + 1), f(i, j), fN, scheme) -
                   face_value(flux.qz(i, j), fS, f(i, j), scheme);
            out(i, j) = net / cell_mass(g, i, j);
        }
    return out;
}

/// Conservative theta diffusion on the massive cells; exact telescoping
/// against the grid quadrature weights (zero axis face), second order.
ScalarField theta_diffusion(const ScalarField& th) {
    const Grid& g = th.grid();
    const FaceGeometry& geo = face_geometry(g);
    const int nr = g.nr, nz = g.nz;
    const double dz = g.dz;
    ScalarField out(th.grid_ptr(), Parity::Even);
    for (int j = 0; j <= nz; ++j) {
        // Axis row: regularized even-limit form; zero quadrature weight, so
        // it never enters the conserved mean.
        {
            double zpart = 0.0;
            if (j > 0) zpart += (th(0, j - 1) - th(0, j)) / dz;
            if (j < nz) zpart += (th(0, j + 1) - th(0, j)) / dz;
            out(0, j) = 4.0 * (th(1, j) - th(0, j)) / (g.dr * g.dr) +
                        zpart / (g.cz(j) * dz);
        }
        for (int i = 1; i <= nr; ++i) {
            double rpart = -geo.tau[i] * (th(i, j) - th(i - 1, j));
            if (i < nr) rpart += geo.tau[i + 1] * (th(i + 1, j) - th(i, j));
            rpart /= g.r(i) * g.cr(i) * g.dr;
            double zpart = 0.0;
            if (j > 0) zpart += (th(i, j - 1) - th(i, j)) / dz;
            if (j < nz) zpart += (th(i, j + 1) - th(i, j)) / dz;
            out(i, j) = rpart + zpart / (g.cz(j) * dz);
        }
    }
    return out;
}

/// lap(u) - (2/r) u_r = r (u_r / r)_r + u_zz, monotone pointwise form;
/// rows i = 0 and i = nr stay zero (the swirl is pinned there), z walls use
/// the mirror ghost (u_z = 0 on S_2).
ScalarField swirl_diffusion(const ScalarField& u) {
    const Grid& g = u.grid();
    const int nr = g.nr, nz = g.nz;
    const double dr = g.dr, dz = g.dz;
    ScalarField out(u.grid_ptr(), Parity::Odd);
    for (int j = 0; j <= nz; ++j)
        for (int i = 1; i < nr; ++i) {
            const double rp = g.r(i) + 0.5 * dr, rm = g.r(i) - 0.5 * dr;
            const double rpart =
                g.r(i) *
                ((u(i + 1, j) - u(i, j)) / rp - (u(i, j) - u(i - 1, j)) / rm) /
                (dr * dr);
            double zpart;
            if (j == 0)
                zpart = 2.0 * (u(i, 1) - u(i, 0)) / (dz * dz);
            else if (j == nz)
                zpart = 2.0 * (u(i, nz - 1) - u(i, nz)) / (dz * dz);
            else
                zpart = (u(i, j + 1) - 2.0 * u(i, j) + u(i, j - 1)) / (dz * dz);
            out(i, j) = rpart + zpart;
        }
    return out;
}

void apply_swirl_bcs(ScalarField& u) {
    u.values().row(0).setZero();
    u.values().row(u.nr()).setZero();
}

void apply_omega_bcs(ScalarField& om) {
    om.values().row(0).setZero();
    om.values().row(om.nr()).setZero();
    om.values().col(0).setZero();
    om.values().col(om.nz()).setZero();
}

void check_finite(const ScalarField& f, const char* name, double t) {
    int bi = 0, bj = 0;
    if (f.has_nonfinite(&bi, &bj)) throw BlowupError(name, bi, bj, t);
}

double weighted_sum(const ScalarField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i) s += g.w(i, j) * f(i, j);
    return s;
}

}  // namespace

void refresh_derived(SimState& s, const DynamicsConfig& cfg) {
    auto sol = solve_psi(s.omega_phi, cfg.elliptic_tol, cfg.elliptic_max_iter);
    s.psi = std::move(sol.field);
    s.psi_iterations = sol.iterations;
    s.psi_residual = sol.final_residual;
    auto [vr, vz] = velocity_from_psi(s.psi);
    s.v_r = std::move(vr);
    s.v_z = std::move(vz);
    s.v_phi = divide_by_r(s.u, Parity::Odd);
    ScalarField uz = ddz(s.u);
    s.omega_r = divide_by_r(uz, Parity::Odd);
    s.omega_r.values() = -s.omega_r.values();
    s.omega_z = divide_by_r(ddr(s.u), Parity::Even);
    // The sign of the d(alpha)/dt * theta_z source in the transport identity
    // for Phi differs between equivalent writings; Phi is a derived
    // diagnostic here, so no transport form is discretized.
    s.Phi = divide_by_r(s.omega_r, Parity::Even);
    s.Gamma = divide_by_r(s.omega_phi, Parity::Even);
    s.psi1 = divide_by_r(s.psi, Parity::Even);
}

SimState make_state(const GridPtr&, ScalarField u0, ScalarField omega0,
                    ScalarField theta0, const DynamicsConfig& cfg) {
    SimState s;
    s.t = 0.0;
    s.u = std::move(u0);
    s.omega_phi = std::move(omega0);
    s.theta = std::move(theta0);
    refresh_derived(s, cfg);
    return s;
}

ScalarField rhs_swirl(const SimState& s, const Forcing& f, const DynamicsConfig& cfg) {
    const GridPtr g = s.u.grid_ptr();
    ScalarField out = advect_flux_form(s, s.u, cfg.scheme_u, g->nr - 1);
    out.values() = -out.values();
    out.values() += cfg.nu * swirl_diffusion(s.u).values();
    if (f.f_phi) {
        for (int j = 0; j <= g->nz; ++j)
            for (int i = 1; i < g->nr; ++i)
                out(i, j) += f.alpha.alpha(s.theta(i, j)) *
                             g->r(i) * f.f_phi(g->r(i), g->z(j), s.t);
    }
    out.values().row(0).setZero();
    out.values().row(g->nr).setZero();
    return out;
}

ScalarField rhs_theta(const SimState& s, const Forcing& f, const DynamicsConfig& cfg) {
    const GridPtr g = s.theta.grid_ptr();
    const int nr = g->nr, nz = g->nz;
    ScalarField out = advect_flux_form(s, s.theta, cfg.scheme_theta, nr);
    out.values() = -out.values();
    // Axis row advection: v_r vanishes there; pure z-transport.
    for (int j = 0; j <= nz; ++j) {
        const double vz = s.v_z(0, j);
        double dth;
        if (cfg.scheme_theta == AdvectionScheme::Upwind1) {
            if (vz >= 0.0)
                dth = (j > 0) ? (s.theta(0, j) - s.theta(0, j - 1)) / g->dz
                              : (s.theta(0, 1) - s.theta(0, 0)) / g->dz;
            else
                dth = (j < nz) ? (s.theta(0, j + 1) - s.theta(0, j)) / g->dz
                               : (s.theta(0, nz) - s.theta(0, nz - 1)) / g->dz;
        } else {
            if (j == 0)
                dth = (s.theta(0, 1) - s.theta(0, 0)) / g->dz;
            else if (j == nz)
                dth = (s.theta(0, nz) - s.theta(0, nz - 1)) / g->dz;
            else
                dth = (s.theta(0, j + 1) - s.theta(0, j - 1)) / (2.0 * g->dz);
        }
        out(0, j) = -vz * dth;
    }
    out.values() += cfg.kappa * theta_diffusion(s.theta).values();
    if (f.g) {
        for (int j = 0; j <= nz; ++j)
            for (int i = 0; i <= nr; ++i) out(i, j) += f.g(g->r(i), g->z(j), s.t);
    }
    return out;
}

ScalarField rhs_omega_phi(const SimState& s, const Forcing& f,
                          const DynamicsConfig& cfg) {
    const GridPtr g = s.omega_phi.grid_ptr();
    const int nr = g->nr, nz = g->nz;
    ScalarField adv = advect(s.v_r, s.v_z, s.omega_phi, cfg.scheme_omega);
    ScalarField lap = laplacian_cyl(s.omega_phi);
    ScalarField vr_over_r = divide_by_r(s.v_r, Parity::Even);
    // Vortex stretching (2/r) v_phi v_phi,z = (u^2)_z / r^3 as the
    // singularity-safe product (u/r)*(u_z/r)*(2/r).
    ScalarField uz_over_r = divide_by_r(ddz(s.u), Parity::Odd);
    ScalarField prod(g, Parity::Even,
                     (s.v_phi.values() * uz_over_r.values()).eval());
    ScalarField stretch = divide_by_r(prod, Parity::Odd);

    const bool has_buoy = f.f_r || f.f_z;
    ScalarField th_r = has_buoy ? ddr(s.theta) : ScalarField(g, Parity::Odd);
    ScalarField th_z = has_buoy ? ddz(s.theta) : ScalarField(g, Parity::Even);

    ScalarField out(g, Parity::Odd);
    for (int j = 1; j < nz; ++j)
        for (int i = 1; i < nr; ++i) {
            const double r = g->r(i), z = g->z(j);
            double v = -adv(i, j) + vr_over_r(i, j) * s.omega_phi(i, j) +
                       cfg.nu * (lap(i, j) - s.omega_phi(i, j) / (r * r)) +
                       2.0 * stretch(i, j);
            if (has_buoy) {
                const double da = f.alpha.dalpha(s.theta(i, j));
                const double fr = f.f_r ? f.f_r(r, z, s.t) : 0.0;
                const double fz = f.f_z ? f.f_z(r, z, s.t) : 0.0;
                v += da * (th_z(i, j) * fr - th_r(i, j) * fz);
            }
            if (f.F_phi) v += f.alpha.alpha(s.theta(i, j)) * f.F_phi(r, z, s.t);
            out(i, j) = v;
        }
    return out;
}

double stable_dt(const SimState& s, const DynamicsConfig& cfg) {
    const Grid& g = s.u.grid();
    const double hmin = std::min(g.dr, g.dz);
    double dt = cfg.cfl_diff * hmin * hmin / (4.0 * std::max(cfg.nu, cfg.kappa));
    const double vr_max = s.v_r.values().abs().maxCoeff();
    const double vz_max = s.v_z.values().abs().maxCoeff();
    if (vr_max > 0.0) dt = std::min(dt, cfg.cfl_adv * g.dr / vr_max);
    if (vz_max > 0.0) dt = std::min(dt, cfg.cfl_adv * g.dz / vz_max);
    return dt;
}

double step(SimState& s, const Forcing& f, double dt, const DynamicsConfig& cfg) {
    const GridPtr g = s.u.grid_ptr();
    const double vol = g->volume();
    const double t0 = s.t;

    const double g_mean0 =
        f.g ? weighted_sum(sample(f.g, g, Parity::Even, t0)) / vol : 0.0;

    ScalarField du = rhs_swirl(s, f, cfg);
    ScalarField dom = rhs_omega_phi(s, f, cfg);
    ScalarField dth = rhs_theta(s, f, cfg);

    SimState s1;
    s1.t = t0 + dt;
    s1.u = ScalarField(g, Parity::Odd, s.u.values() + dt * du.values());
    s1.omega_phi =
        ScalarField(g, Parity::Odd, s.omega_phi.values() + dt * dom.values());
    s1.theta = ScalarField(g, Parity::Even, s.theta.values() + dt * dth.values());
    apply_swirl_bcs(s1.u);
    apply_omega_bcs(s1.omega_phi);
    check_finite(s1.u, "u", s1.t);
    check_finite(s1.omega_phi, "omega_phi", s1.t);
    check_finite(s1.theta, "theta", s1.t);
    refresh_derived(s1, cfg);

    const double g_mean1 =
        f.g ? weighted_sum(sample(f.g, g, Parity::Even, s1.t)) / vol : 0.0;

    ScalarField du1 = rhs_swirl(s1, f, cfg);
    ScalarField dom1 = rhs_omega_phi(s1, f, cfg);
    ScalarField dth1 = rhs_theta(s1, f, cfg);

    s.u.values() = 0.5 * (s.u.values() + s1.u.values() + dt * du1.values());
    s.omega_phi.values() =
        0.5 * (s.omega_phi.values() + s1.omega_phi.values() + dt * dom1.values());
    s.theta.values() =
        0.5 * (s.theta.values() + s1.theta.values() + dt * dth1.values());
    apply_swirl_bcs(s.u);
    apply_omega_bcs(s.omega_phi);
    s.t = t0 + dt;
    check_finite(s.u, "u", s.t);
    check_finite(s.omega_phi, "omega_phi", s.t);
    check_finite(s.theta, "theta", s.t);
    refresh_derived(s, cfg);

    return 0.5 * dt * (g_mean0 + g_mean1);
}

namespace {

double vector_l2(const Grid& g, const ScalarField& a, const ScalarField& b,
                 const ScalarField& c) {
    double s = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i)
            s += g.w(i, j) *
                 (a(i, j) * a(i, j) + b(i, j) * b(i, j) + c(i, j) * c(i, j));
    return std::sqrt(s);
}

double vector_lp(const Grid& g, const ScalarField& a, const ScalarField& b,
                 const ScalarField& c, double p) {
    double s = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i) {
            const double m2 =
                a(i, j) * a(i, j) + b(i, j) * b(i, j) + c(i, j) * c(i, j);
            if (g.w(i, j) > 0.0) s += g.w(i, j) * std::pow(m2, 0.5 * p);
        }
    return std::pow(s, 1.0 / p);
}

void require_axis_clean(const ScalarField& f, const char* what) {
    for (int j = 0; j <= f.nz(); ++j)
        if (f(0, j) != 0.0)
            throw SingularForcingError(
                std::string("forcing component ") + what +
                " does not vanish at the axis; the /r norms are singular");
}

}  // namespace

void record_diagnostics(NormHistory& h, const SimState& s, const Forcing& f,
                        const RunParams& params, double g_mean_integral) {
    const GridPtr g = s.u.grid_ptr();
    h.start_record(s.t);

    std::vector<double> ps = params.track_p;
    ps.push_back(params.d_exponent);
    ps.push_back(kInfinity);

    const std::pair<const char*, const ScalarField*> fields[] = {
        {"u", &s.u},           {"theta", &s.theta}, {"omega_phi", &s.omega_phi},
        {"v_r", &s.v_r},       {"v_phi", &s.v_phi}, {"v_z", &s.v_z},
        {"Phi", &s.Phi},       {"Gamma", &s.Gamma}, {"omega_r", &s.omega_r},
        {"omega_z", &s.omega_z}, {"psi", &s.psi},   {"psi1", &s.psi1}};
    for (const auto& [name, fld] : fields)
        for (double p : ps) h.put(norm_key(name, p), lp_norm(*fld, p));
    const char* grad_fields[] = {"u",   "theta",   "v_r",     "v_phi", "v_z",
                                 "Phi", "Gamma",   "psi",     "psi1",
                                 "omega_r", "omega_z"};
    for (const auto& [name, fld] : fields)
        for (const char* gname : grad_fields)
            if (std::string(name) == gname) h.put(grad_key(name), grad_l2(*fld));

    h.put("v.L2", vector_l2(*g, s.v_r, s.v_phi, s.v_z));
    const double gr = grad_l2(s.v_r), gp = grad_l2(s.v_phi), gz = grad_l2(s.v_z);
    h.put("v.gradsq", gr * gr + gp * gp + gz * gz);
    h.put("v.metricsq", metric_integral_sq(s.v_r) + metric_integral_sq(s.v_phi));

    ScalarField uz = ddz(s.u), ur = ddr(s.u);
    h.put("u_z.L2", lp_norm(uz, 2.0));
    h.put("u_z.grad2", grad_l2(uz));
    h.put("u_r.L2", lp_norm(ur, 2.0));
    h.put("u_rr.L2", lp_norm(ddr(ur), 2.0));
    h.put("u_rz.L2", lp_norm(ddz(ur), 2.0));

    h.put("theta.min", s.theta.values().minCoeff());
    h.put("theta.max", s.theta.values().maxCoeff());
    h.put("theta.wmean", weighted_sum(s.theta) / g->volume());
    h.put("div.Linf",
          divergence_cyl(s.v_r, s.v_z).values().abs().maxCoeff());
    h.put("psi.iters", double(s.psi_iterations));

    // Forcing norms (zero columns when the profile is absent, so the record
    // schema depends only on configuration).
    const double t = s.t;
    ScalarField fr = sample(f.f_r, g, Parity::Odd, t);
    ScalarField fphi = sample(f.f_phi, g, Parity::Odd, t);
    ScalarField fz = sample(f.f_z, g, Parity::Even, t);
    ScalarField Fr = sample(f.F_r, g, Parity::Odd, t);
    ScalarField Fphi = sample(f.F_phi, g, Parity::Odd, t);
    ScalarField Fz = sample(f.F_z, g, Parity::Even, t);
    ScalarField gs = sample(f.g, g, Parity::Even, t);
    ScalarField f0 = sample_f0(f, g, t);

    h.put("f.L2", vector_l2(*g, fr, fphi, fz));
    h.put("f0.Linf", lp_norm(f0, kInfinity));
    h.put("f0.L2", lp_norm(f0, 2.0));
    if (f.has_f()) {
        require_axis_clean(fr, "f_r");
        require_axis_clean(fphi, "f_phi");
        require_axis_clean(fz, "f_z");
        require_axis_clean(Fphi, "F_phi = (curl f)_phi");
    }
    ScalarField fbr = divide_by_r(fr, Parity::Even);
    ScalarField fbp = divide_by_r(fphi, Parity::Even);
    ScalarField fbz = divide_by_r(fz, Parity::Odd);
    h.put("fbar.L3", vector_lp(*g, fbr, fbp, fbz, 3.0));
    const double p65 = 6.0 / 5.0;
    h.put("Fbar_r.L" + p_token(p65),
          lp_norm(divide_by_r(Fr, Parity::Even), p65));
    h.put("Fbar_phi.L" + p_token(p65),
          lp_norm(divide_by_r(Fphi, Parity::Even), p65));
    h.put("F_r.L" + p_token(p65), lp_norm(Fr, p65));
    h.put("F_z.L" + p_token(p65), lp_norm(Fz, p65));
    h.put("fphi.L2", lp_norm(fphi, 2.0));
    h.put("fphi.L3", lp_norm(fphi, 3.0));
    h.put("fphi.L" + p_token(10.0 / 7.0), lp_norm(fphi, 10.0 / 7.0));
    h.put("fphi_over_r.Linf",
          divide_by_r(fphi, Parity::Even).values().abs().maxCoeff());
    {
        Eigen::ArrayXd wallsq(g->nz + 1);
        for (int j = 0; j <= g->nz; ++j)
            wallsq[j] = fphi(g->nr, j) * fphi(g->nr, j);
        h.put("fphi_S1.L2",
              std::sqrt(2.0 * std::numbers::pi * g->R * g->trapz_z(wallsq)));
    }
    h.put("g.L2", lp_norm(gs, 2.0));
    h.put("g.Linf", lp_norm(gs, kInfinity));
    h.put("g.wmean", weighted_sum(gs) / g->volume());
    h.put("g.integral", g_mean_integral);
}

RunResult run_simulation(const GridPtr& grid, const ScalarField& u0,
                         const ScalarField& omega0, const ScalarField& theta0,
                         const Forcing& forcing, const DynamicsConfig& cfg,
                         const RunParams& params) {
    RunResult out;
    out.state = make_state(grid, u0, omega0, theta0, cfg);
    record_diagnostics(out.history, out.state, forcing, params, 0.0);
    long k = 0;
    while (out.state.t < params.t_end * (1.0 - 1e-12) && k < params.max_steps) {
        double dt = params.dt_override > 0.0 ? params.dt_override
                                             : stable_dt(out.state, cfg);
        dt = std::min(dt, params.t_end - out.state.t);
        try {
            out.g_mean_integral += step(out.state, forcing, dt, cfg);
        } catch (const BlowupError& e) {
            out.blew_up = true;
            out.blowup_message = e.what();
            break;
        } catch (const EllipticError& e) {
            out.blew_up = true;
            out.blowup_message = std::string("stream-function solve failed: ") + e.what();
            break;
        }
        ++k;
        if (k % params.cadence == 0 ||
            out.state.t >= params.t_end * (1.0 - 1e-12))
            record_diagnostics(out.history, out.state, forcing, params,
                               out.g_mean_integral);
    }
    return out;
}

}  // namespace axicyl
