#include "axicyl/estimates.hpp"

#include "axicyl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace axicyl {

namespace {

const double kP65 = 6.0 / 5.0;
const double kP107 = 10.0 / 7.0;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

/// Prefix trapezoid integrals of the squared series.
std::vector<double> prefix_integral_sq(const NormHistory& h, const std::string& key) {
    const auto& v = h.series(key);
    const auto& t = h.times();
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t k = 1; k < v.size(); ++k)
        out[k] = out[k - 1] +
                 0.5 * (v[k] * v[k] + v[k - 1] * v[k - 1]) * (t[k] - t[k - 1]);
    return out;
}

std::vector<double> prefix_integral(const NormHistory& h, const std::string& key) {
    const auto& v = h.series(key);
    const auto& t = h.times();
    std::vector<double> out(v.size(), 0.0);
    for (std::size_t k = 1; k < v.size(); ++k)
        out[k] = out[k - 1] + 0.5 * (v[k] + v[k - 1]) * (t[k] - t[k - 1]);
    return out;
}

std::vector<double> prefix_max(const NormHistory& h, const std::string& key) {
    const auto& v = h.series(key);
    std::vector<double> out(v.size());
    double m = -kInfinity;
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = m = std::max(m, v[k]);
    return out;
}

}  // namespace

double theta0_of(double eps1, double eps2, double d) {
    return (1.0 - 3.0 / d) * eps1 - (3.0 / d) * eps2;
}

double closing_exponent(double eps0, double theta0) {
    return 3.0 * eps0 + 2.0 - 0.5 * theta0;
}

std::string violated_side_condition(const BudgetParams& p) {
    if (!(p.d > 3.0)) return "d must exceed 3";
    if (!(p.eps1 > 0.0) || !(p.eps2 > 0.0) || !(p.eps0 > 0.0))
        return "eps0, eps1, eps2 must be positive";
    const double th0 = theta0_of(p.eps1, p.eps2, p.d);
    if (!(th0 > 0.0)) return "theta0 must be positive: eps1 > 3*eps2/(d-3)";
    if (!(1.0 + p.eps2 / p.eps1 < p.d / 3.0)) return "1 + eps2/eps1 < d/3";
    if (!(p.eps1 * (1.0 - 3.0 / p.d) < 1.0 + 3.0 * p.eps2 / p.d))
        return "eps1 (1 - 3/d) < 1 + 3 eps2 / d";
    if (!(p.c0 > 0.0)) return "c0 must be positive";
    return "";
}

Constants compute_constants(const NormHistory& h, const Forcing& forcing,
                            const BudgetParams& params, double nu,
                            double volume, double R) {
    Constants c;
    c.params = params;
    const std::string bad = violated_side_condition(params);
    if (!bad.empty()) throw ConfigError("budget parameters: " + bad);
    c.theta0 = theta0_of(params.eps1, params.eps2, params.d);

    c.theta_star = h.series("theta.min").front();
    const double th0_sup = h.series("theta.max").front();
    const double g_inf_1 = mixed_norm(h, "g.Linf", 1.0);
    c.theta_upper = g_inf_1 + th0_sup;
    c.phi_bound = [&] {
        double sup = 0.0;
        const int n = 1024;
        for (int k = 0; k < n; ++k) {
            const double th = c.theta_star +
                              (c.theta_upper - c.theta_star) * k / double(n - 1);
            sup = std::max(sup, std::abs(forcing.alpha.alpha(th)) +
                                    std::abs(forcing.alpha.dalpha(th)));
        }
        return sup * 1.001;
    }();
    const double phi = c.phi_bound;

    const double g_2_spacetime = std::sqrt(h.time_integral_sq("g.L2"));
    const double g_total = volume * h.time_integral("g.wmean");
    const double th0_l2 = h.series(norm_key("theta", 2.0)).front();
    c.D0 = g_2_spacetime + std::abs(g_total) + th0_l2;
    c.D0_squared_variant = g_2_spacetime + g_total * g_total + th0_l2 * th0_l2;

    c.D1 = phi * mixed_norm(h, "f.L2", 1.0) + h.series("v.L2").front();
    c.D2 = phi * mixed_norm(h, "f0.Linf", 1.0) +
           h.series(norm_key("u", kInfinity)).front();
    c.B1 = phi * mixed_norm(h, "fbar.L3", kInfinity) / std::sqrt(nu);
    c.D3 = phi / std::sqrt(nu) *
               (mixed_norm(h, "Fbar_r.L" + p_token(kP65), 2.0) +
                mixed_norm(h, "Fbar_phi.L" + p_token(kP65), 2.0)) +
           c.D2 * h.series(norm_key("Gamma", 2.0)).front() +
           h.series(norm_key("Phi", 2.0)).front();

    const double f0_2_spacetime_sq = h.time_integral_sq("f0.L2");
    const double uz0 = h.series("u_z.L2").front();
    const double ur0 = h.series("u_r.L2").front();
    c.D4_sq = (c.D1 * c.D1 + c.D2 * c.D2 + uz0 * uz0 + phi * f0_2_spacetime_sq) / nu;
    c.D5_sq = c.D1 * c.D1 * (1.0 + c.D2) + c.D1 * c.D1 * c.D2 * c.D2 +
              phi * f0_2_spacetime_sq + ur0 * ur0;

    const double fac = std::max(1.0, c.D2 * c.D2);  // D2^2 / min(1, D2^2)
    const double eps = params.eps1 + params.eps2;
    c.D6_sq = fac * std::pow(c.D2, 1.0 - eps) *
              std::pow(R, params.eps2) / params.eps2;
    c.D7_sq = fac * c.B1 * c.B1;
    c.D8_sq = fac * c.D3 * c.D3;

    const double fphi_3_inf = mixed_norm(h, "fphi.L3", kInfinity);
    c.D9_sq = phi / nu * fphi_3_inf * fphi_3_inf;

    const double fphi_s1 = std::sqrt(h.time_integral_sq("fphi_S1.L2"));
    const double Fr_652 = mixed_norm(h, "F_r.L" + p_token(kP65), 2.0);
    const double Fz_652 = mixed_norm(h, "F_z.L" + p_token(kP65), 2.0);
    const double omr0 = h.series(norm_key("omega_r", 2.0)).front();
    const double omz0 = h.series(norm_key("omega_z", 2.0)).front();
    c.D10_sq = (std::sqrt(c.D4_sq) + std::sqrt(c.D5_sq)) * fphi_s1 +
               (Fr_652 * Fr_652 + Fz_652 * Fz_652) / nu + omr0 * omr0 +
               omz0 * omz0;

    c.D11 = std::sqrt(c.D2) * phi *
                std::sqrt(mixed_norm(h, "fphi_over_r.Linf", 1.0)) +
            h.series(norm_key("v_phi", kInfinity)).front();

    const double cpow = std::pow(params.c0, params.d - 2.0);
    c.D12 = c.D2 * c.D2 * c.D1 * c.D1 / cpow +
            mixed_norm(h, "fphi.L" + p_token(kP107), kP107) * c.D1 / cpow +
            0.5 * h.series(norm_key("v_phi", params.d)).front();
    return c;
}

EstimateReport make_report(const std::string& id, double lhs, double rhs,
                           double slack, double abs_floor,
                           const std::string& notes) {
    EstimateReport r;
    r.id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = slack;
    r.abs_floor = abs_floor;
    r.margin = rhs * (1.0 + slack) + abs_floor - lhs;
    r.pass = std::isfinite(lhs) && lhs <= rhs * (1.0 + slack) + abs_floor;
    r.notes = notes;
    return r;
}

std::vector<double> compute_X(const NormHistory& h) {
    auto phi_sup = prefix_max(h, norm_key("Phi", 2.0));
    auto gam_sup = prefix_max(h, norm_key("Gamma", 2.0));
    auto phi_int = prefix_integral_sq(h, grad_key("Phi"));
    auto gam_int = prefix_integral_sq(h, grad_key("Gamma"));
    std::vector<double> X(phi_sup.size());
    for (std::size_t k = 0; k < X.size(); ++k)
        X[k] = phi_sup[k] + std::sqrt(phi_int[k]) + gam_sup[k] +
               std::sqrt(gam_int[k]);
    return X;
}

EstimateReport assumption3_ratio(const NormHistory& h, double d, double c0) {
    const double num = h.running_max(norm_key("v_phi", d));
    const double den = h.running_max(norm_key("v_phi", kInfinity));
    if (den <= 0.0) {
        EstimateReport r;
        r.id = "assumption3_ratio";
        r.applicable = false;
        r.pass = true;
        r.notes = "zero azimuthal velocity: ratio undefined, not applicable";
        return r;
    }
    // Pass means the lower bound holds: ratio >= c0.
    EstimateReport r;
    r.id = "assumption3_ratio";
    r.lhs = c0;
    r.rhs = num / den;
    r.margin = r.rhs - c0;
    r.pass = r.rhs >= c0;
    r.notes = "|v_phi|_{d,inf}/|v_phi|_{inf,inf} with d = " + fmt(d);
    return r;
}

EstimateReport check_theta_bounds(const NormHistory& h, const Constants& c) {
    const double tol = 1e-10 * (1.0 + c.theta_upper);
    const double tmin = h.running_min("theta.min");
    const double tmax = h.running_max("theta.max");
    const bool lower_ok = tmin >= c.theta_star - tol;
    EstimateReport r = make_report("theta_bounds", tmax, c.theta_upper, 0.0, tol,
                                   "min theta = " + fmt(tmin) +
                                       ", theta_* = " + fmt(c.theta_star) +
                                       ", lower bound " +
                                       (lower_ok ? "holds" : "VIOLATED"));
    r.pass = r.pass && lower_ok;
    return r;
}

EstimateReport check_theta_energy(const NormHistory& h, const Constants& c,
                                  double slack) {
    const double lhs =
        v_norm_from_history(h, norm_key("theta", 2.0), grad_key("theta"));
    return make_report("theta_energy", lhs, c.D0, slack, 1e-14,
                       "squared-variant rhs = " + fmt(c.D0_squared_variant));
}

EstimateReport check_energy_velocity(const NormHistory& h, const Constants& c,
                                     double nu, double slack) {
    const auto& vl2 = h.series("v.L2");
    auto grad_int = prefix_integral(h, "v.gradsq");
    auto metric_int = prefix_integral(h, "v.metricsq");
    double lhs = 0.0;
    for (std::size_t k = 0; k < vl2.size(); ++k)
        lhs = std::max(lhs, vl2[k] * vl2[k] + nu * (grad_int[k] + metric_int[k]));
    const double f21 = mixed_norm(h, "f.L2", 1.0);
    const double v0 = vl2.front();
    const double rhs = 3.0 * c.phi_bound * c.phi_bound * f21 * f21 + 2.0 * v0 * v0;
    return make_report("energy_velocity", lhs, rhs, slack, 1e-14);
}

EstimateReport check_swirl_max(const NormHistory& h, const Constants& c,
                               bool upwind_active) {
    const double lhs = h.running_max(norm_key("u", kInfinity));
    if (upwind_active)
        return make_report("swirl_max", lhs, c.D2, 0.0, 1e-10 * (1.0 + c.D2),
                           "monotone upwind transport active");
    return make_report("swirl_max", lhs, c.D2, 0.02, 1e-14,
                       "non-monotone advection: 2% slack");
}

EstimateReport check_psi_energy(const NormHistory& h, const Constants& c) {
    const auto& pl2 = h.series(norm_key("psi", 2.0));
    const auto& pg = h.series(grad_key("psi"));
    const auto& p1l2 = h.series(norm_key("psi1", 2.0));
    double lhs = 0.0;
    for (std::size_t k = 0; k < pl2.size(); ++k)
        lhs = std::max(lhs, pl2[k] * pl2[k] + pg[k] * pg[k] + p1l2[k] * p1l2[k]);
    const double d1sq = c.D1 * c.D1;
    EstimateReport r;
    r.id = "psi_energy_ratio";
    r.lhs = lhs;
    r.rhs = d1sq;
    r.margin = 0.0;
    r.applicable = d1sq > 0.0 || lhs > 0.0;
    const double ratio = d1sq > 0.0 ? lhs / d1sq : (lhs > 0.0 ? kInfinity : 0.0);
    r.pass = std::isfinite(ratio);
    r.notes = "empirical ratio lhs/D1^2 = " + fmt(ratio) +
              "; stability judged across refinement";
    return r;
}

std::vector<EstimateReport> check_grad_swirl_energy(const NormHistory& h,
                                                    const Constants& c, double nu) {
    std::vector<EstimateReport> out;
    const auto& uz = h.series("u_z.L2");
    auto guz = prefix_integral_sq(h, "u_z.grad2");
    double lhs_z = 0.0;
    for (std::size_t k = 0; k < uz.size(); ++k)
        lhs_z = std::max(lhs_z, uz[k] * uz[k] + nu * guz[k]);
    const auto& ur = h.series("u_r.L2");
    auto urr = prefix_integral_sq(h, "u_rr.L2");
    auto urz = prefix_integral_sq(h, "u_rz.L2");
    double lhs_r = 0.0;
    for (std::size_t k = 0; k < ur.size(); ++k)
        lhs_r = std::max(lhs_r, ur[k] * ur[k] + nu * (urr[k] + urz[k]));

    auto ratio_report = [](const std::string& id, double lhs, double rhs) {
        EstimateReport r;
        r.id = id;
        r.lhs = lhs;
        r.rhs = rhs;
        const double ratio = rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInfinity : 0.0);
        r.pass = std::isfinite(ratio);
        r.notes = "empirical ratio = " + fmt(ratio);
        return r;
    };
    out.push_back(ratio_report("grad_swirl_energy_z", lhs_z, c.D4_sq));
    out.push_back(ratio_report("grad_swirl_energy_r", lhs_r, c.D5_sq));
    return out;
}

EstimateReport check_vphi_sup(const NormHistory& h, const Constants& c, double nu,
                              double slack) {
    const double lhs = h.running_max(norm_key("v_phi", kInfinity));
    const double Xend = compute_X(h).back();
    const double rhs =
        c.D2 / std::sqrt(nu) * std::pow(c.D1, 0.25) * std::pow(Xend, 0.75) + c.D11;
    return make_report("vphi_sup", lhs, rhs, slack, 1e-12,
                       "X(t_end) = " + fmt(Xend));
}

EstimateReport check_budget(const NormHistory& h, const Constants& c) {
    const double e = closing_exponent(c.params.eps0, c.theta0);
    auto X = compute_X(h);
    double phi_hat = 0.0;
    for (double x : X)
        phi_hat = std::max(phi_hat, x * x / (std::pow(x, e) + 1.0));
    // Largest root of x^2 = phi_hat (x^e + 1); unique positive root for e < 2.
    double x_max = 0.0;
    if (phi_hat > 0.0) {
        double lo = 0.0, hi = std::max(1.0, 2.0 * X.back() + 1.0);
        auto g = [&](double x) { return x * x - phi_hat * (std::pow(x, e) + 1.0); };
        while (g(hi) < 0.0) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < 0.0 ? lo : hi) = mid;
        }
        x_max = 0.5 * (lo + hi);
    }
    EstimateReport r = make_report(
        "budget_fixed_point", X.back(), x_max, 0.0, 1e-9 * (1.0 + x_max),
        "closing exponent = " + fmt(e) + " (< 2 required), empirical factor = " +
            fmt(phi_hat));
    r.pass = r.pass && e < 2.0 && std::isfinite(X.back());
    return r;
}

namespace {

double wsum_sq(const ScalarField& f, const std::function<double(int, int)>& wt) {
    const Grid& g = f.grid();
    double s = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i) {
            if (g.w(i, j) == 0.0) continue;  // axis node: singular weights stay out
            s += g.w(i, j) * wt(i, j) * f(i, j) * f(i, j);
        }
    return s;
}

double wsum_sq(const ScalarField& f) {
    return wsum_sq(f, [](int, int) { return 1.0; });
}

/// Line integral over z at fixed radial index (1-D trapezoid of f^2).
double line_sq(const ScalarField& f, int i, double weight) {
    const Grid& g = f.grid();
    Eigen::ArrayXd vals(g.nz + 1);
    for (int j = 0; j <= g.nz; ++j) vals[j] = f(i, j) * f(i, j);
    return weight * g.trapz_z(vals);
}

EstimateReport ratio_report(const std::string& id, double lhs, double rhs,
                            const std::string& extra = "") {
    EstimateReport r;
    r.id = id;
    r.lhs = lhs;
    r.rhs = rhs;
    const double ratio =
        rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? kInfinity : 0.0);
    r.pass = std::isfinite(ratio);
    r.margin = 0.0;
    r.notes = "empirical ratio = " + fmt(ratio) +
              (extra.empty() ? "" : "; " + extra);
    return r;
}

}  // namespace

EstimateReport check_elliptic_h2(const ScalarField& psi1, const ScalarField& gamma) {
    const Grid& g = psi1.grid();
    ScalarField p_r = ddr(psi1), p_z = ddz(psi1);
    ScalarField p_rr = ddr(p_r), p_rz = ddz(p_r), p_zz = ddz(p_z);
    ScalarField p_r_over_r = divide_by_r(p_r, Parity::Even);
    double lhs = wsum_sq(p_rr) + wsum_sq(p_rz) + wsum_sq(p_zz) +
                 wsum_sq(p_r_over_r);
    // Boundary line integrals: plain dz integral on the axis line, and the
    // lateral-surface measure 2*pi*R on r = R.
    lhs += line_sq(p_z, 0, 1.0);
    lhs += line_sq(p_r, g.nr, 2.0 * std::numbers::pi * g.R);
    const double rhs = wsum_sq(gamma);
    return ratio_report("elliptic_h2", lhs, rhs);
}

std::vector<EstimateReport> check_elliptic_h3(const ScalarField& psi1,
                                              const ScalarField& gamma) {
    const Grid& g = psi1.grid();
    ScalarField p_r = ddr(psi1), p_z = ddz(psi1);
    ScalarField p_zz = ddz(p_z);
    ScalarField p_zzr = ddr(p_zz), p_zzz = ddz(p_zz);
    ScalarField p_rz = ddz(p_r);
    ScalarField p_rzz = ddz(p_rz), p_rrz = ddr(p_rz);
    ScalarField p_rz_over_r = divide_by_r(p_rz, Parity::Odd);
    const double gz_sq = wsum_sq(ddz(gamma));

    std::vector<EstimateReport> out;
    {
        double lhs = wsum_sq(p_zzr) + wsum_sq(p_zzz) + line_sq(p_zz, 0, 1.0);
        out.push_back(ratio_report("elliptic_h3_zz", lhs, gz_sq));
    }
    {
        double lhs = wsum_sq(p_rrz) + wsum_sq(p_rzz) + wsum_sq(p_zzz) +
                     line_sq(p_zz, 0, 1.0) +
                     line_sq(p_rz, g.nr, 2.0 * std::numbers::pi * g.R);
        out.push_back(ratio_report("elliptic_h3_full", lhs, gz_sq));
    }
    {
        double lhs = wsum_sq(p_rz_over_r);
        out.push_back(ratio_report("elliptic_h3_mixed_weighted", lhs, gz_sq));
    }
    return out;
}

EstimateReport check_weighted_estimate(const ScalarField& psi1,
                                       const ScalarField& gamma, double mu) {
    if (!(mu > 0.0 && mu < 1.0))
        throw ConfigError("weighted estimate: mu must lie in (0, 1)");
    const Grid& g = psi1.grid();
    ScalarField p_z = ddz(psi1);
    ScalarField p_zz = ddz(p_z);
    ScalarField p_zzz = ddz(p_zz);
    ScalarField p_rzz = ddr(p_zz);
    auto rpow = [&](double e) {
        return std::function<double(int, int)>(
            [&g, e](int i, int) { return std::pow(g.r(i), e); });
    };
    const double lhs = wsum_sq(p_zzz, rpow(2.0 * mu)) +
                       wsum_sq(p_rzz, rpow(2.0 * mu)) +
                       2.0 * mu * (1.0 - mu) * wsum_sq(p_zz, rpow(2.0 * mu - 2.0));
    const double rhs = wsum_sq(ddz(gamma), rpow(2.0 * mu));
    return ratio_report("weighted_h3_mu" + fmt(mu), lhs, rhs);
}

namespace {

/// Memoized cumulative integral of f from 0, extended segment by segment
/// from the nearest cached abscissa.
class Cumulative {
public:
    explicit Cumulative(const std::function<double(double)>& f) : f_(f) {
        cache_[0.0] = 0.0;
    }
    double operator()(double x) {
        auto it = cache_.upper_bound(x);
        --it;  // nearest cached point <= x (0 is always present)
        const int panels = std::max(2, int((x - it->first) * 4.0));
        const double v =
            it->second + integrate_panels(f_, it->first, x, 1e-13, panels);
        cache_[x] = v;
        return v;
    }

private:
    const std::function<double(double)>& f_;
    std::map<double, double> cache_;
};

}  // namespace

EstimateReport check_hardy(double beta, double p,
                           const std::function<double(double)>& f, double x_cut) {
    if (!(p >= 1.0)) throw ConfigError("hardy: p must be >= 1");
    if (beta == 1.0 / p) throw ConfigError("hardy: beta = 1/p is excluded");
    Cumulative cumulative(f);
    const double total = cumulative(x_cut);
    auto F = [&](double x) {
        return beta > 1.0 / p ? cumulative(x) : total - cumulative(x);
    };
    auto lhs_integrand = [&](double x) {
        return std::pow(std::abs(std::pow(x, -beta) * F(x)), p);
    };
    auto rhs_integrand = [&](double x) {
        return std::pow(std::abs(std::pow(x, 1.0 - beta) * f(x)), p);
    };
    // x = u^2 on (0, 1] softens the endpoint power so the quadrature
    // resolves integrable singularities.
    auto split_integral = [&](const std::function<double(double)>& integrand) {
        auto sub = [&](double u) { return integrand(u * u) * 2.0 * u; };
        return integrate_panels(sub, 1e-10, 1.0, 1e-12, 32) +
               integrate_panels(integrand, 1.0, x_cut, 1e-11,
                                std::max(32, int(x_cut)));
    };
    double lhs_p = split_integral(lhs_integrand);
    double lhs_tail = 0.0;
    if (beta > 1.0 / p) {
        // Beyond x_cut, F <= F(inf) ~ total: the lhs tail is bounded by
        // total^p x_cut^(1 - beta p) / (beta p - 1), included on the lhs.
        const double bp = beta * p;
        lhs_tail = std::pow(total, p) * std::pow(x_cut, 1.0 - bp) / (bp - 1.0);
        lhs_p += lhs_tail;
    }
    const double lhs = std::pow(lhs_p, 1.0 / p);
    const double rhs_norm = std::pow(split_integral(rhs_integrand), 1.0 / p);
    const double rhs = rhs_norm / std::abs(beta - 1.0 / p);
    return make_report("hardy_b" + fmt(beta) + "_p" + fmt(p), lhs, rhs, 1e-6, 0.0,
                       "lhs tail bound = " + fmt(lhs_tail) +
                           ", |f(x_cut)| = " + fmt(std::abs(f(x_cut))));
}

namespace {

double plain_lp(const ScalarField& f, double p) { return lp_norm(f, p); }

double vec2_lp(const ScalarField& a, const ScalarField& b, double p) {
    const Grid& g = a.grid();
    double s = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i) {
            const double m2 = a(i, j) * a(i, j) + b(i, j) * b(i, j);
            if (g.w(i, j) > 0.0) s += g.w(i, j) * std::pow(m2, 0.5 * p);
        }
    return std::pow(s, 1.0 / p);
}

}  // namespace

double sobolev_interp_theta(const SobolevInterpParams& prm) {
    const double n = 3.0;
    const double denom = n / prm.p1 - n / prm.p2 + prm.l;
    if (denom == 0.0) throw ConfigError("sobolev interpolation: degenerate exponents");
    return (n / prm.p1 - n / prm.p + prm.r) / denom;
}

EstimateReport check_sobolev_interp(const ScalarField& f,
                                    const SobolevInterpParams& prm) {
    const double theta = sobolev_interp_theta(prm);
    if (theta < double(prm.r) / prm.l - 1e-12 || theta > 1.0 + 1e-12)
        throw ConfigError("sobolev interpolation: theta outside [r/l, 1]");
    if (prm.l > 2 || prm.r >= prm.l)
        throw ConfigError("sobolev interpolation: only r < l <= 2 supported");

    // Axisymmetric derivative representatives: first order {f_r, f_z},
    // second order {f_rr, f_rz, f_zz, f_r/r}.
    ScalarField f_r = ddr(f), f_z = ddz(f);
    double lhs;
    if (prm.r == 1) {
        lhs = plain_lp(f_r, prm.p) + plain_lp(f_z, prm.p);
    } else {
        ScalarField f_rr = ddr(f_r), f_rz = ddz(f_r), f_zz = ddz(f_z);
        lhs = plain_lp(f_rr, prm.p) + plain_lp(f_rz, prm.p) +
              plain_lp(f_zz, prm.p) + plain_lp(divide_by_r(f_r, Parity::Even), prm.p);
    }
    auto sob = [&](int level, double p) {
        double s = std::pow(plain_lp(f, p), p);
        s += std::pow(plain_lp(f_r, p), p) + std::pow(plain_lp(f_z, p), p);
        if (level >= 2) {
            ScalarField f_rr = ddr(f_r), f_rz = ddz(f_r), f_zz = ddz(f_z);
            s += std::pow(plain_lp(f_rr, p), p) + std::pow(plain_lp(f_rz, p), p) +
                 std::pow(plain_lp(f_zz, p), p) +
                 std::pow(plain_lp(divide_by_r(f_r, Parity::Even), p), p);
        }
        return std::pow(s, 1.0 / p);
    };
    const double rhs = std::pow(plain_lp(f, prm.p1), 1.0 - theta) *
                       std::pow(sob(prm.l, prm.p2), theta);
    return ratio_report("sobolev_interp", lhs, rhs, "theta = " + fmt(theta));
}

EstimateReport check_hardy_interp(const ScalarField& f, double p, double s,
                                  double q) {
    if (!(s >= 0.0 && s <= p && s < 2.0))
        throw ConfigError("hardy interpolation: need 0 <= s <= p and s < 2");
    if (p < 3.0) {
        const double qmax = p * (3.0 - s) / (3.0 - p);
        if (q < p - 1e-12 || q > qmax + 1e-12)
            throw ConfigError("hardy interpolation: q outside [p, p(3-s)/(3-p)] = [" +
                              fmt(p) + ", " + fmt(qmax) + "]");
    } else if (q < p - 1e-12) {
        throw ConfigError("hardy interpolation: q must be >= p");
    }
    const Grid& g = f.grid();
    for (int j = 0; j <= g.nz; ++j)
        if (f(g.nr, j) != 0.0)
            throw ConfigError("hardy interpolation: f must vanish at r = R");
    const double e1 = (3.0 - s) / q - 3.0 / p + 1.0;
    const double e2 = 3.0 / p - (3.0 - s) / q;
    const double lhs = weighted_lq(f, q, s);
    const double rhs = std::pow(lp_norm(f, p), e1) *
                       std::pow(vec2_lp(ddr(f), ddz(f), p), e2);
    return ratio_report("hardy_interp_p" + fmt(p) + "_s" + fmt(s) + "_q" + fmt(q),
                        lhs, rhs,
                        "exponents (" + fmt(e1) + ", " + fmt(e2) + ")");
}

EstimateReport ratio_stability(const std::string& id, double coarse_ratio,
                               double fine_ratio) {
    EstimateReport r;
    r.id = id;
    r.lhs = fine_ratio;
    r.rhs = 1.5 * coarse_ratio;
    r.margin = r.rhs - r.lhs;
    if (coarse_ratio == 0.0 && fine_ratio == 0.0) {
        r.pass = true;
        r.notes = "both ratios vanish";
        return r;
    }
    r.pass = std::isfinite(coarse_ratio) && std::isfinite(fine_ratio) &&
             fine_ratio <= 1.5 * coarse_ratio;
    r.notes = "coarse ratio = " + fmt(coarse_ratio) +
              ", fine ratio = " + fmt(fine_ratio);
    return r;
}

RandomFieldSpec RandomFieldSpec::draw(std::mt19937_64& rng, RandomFieldKind kind) {
    RandomFieldSpec spec;
    spec.kind = kind;
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (auto& row : spec.coeff)
        for (double& v : row) v = uni(rng);
    return spec;
}

double RandomFieldSpec::operator()(const Grid& g, double r, double z) const {
    const double R = g.R, ah = g.a;
    double v = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m)
            v += coeff[k][m] / (1.0 + k * k + m * m) * std::pow(r / R, 2.0 * k) *
                 std::cos(m * std::numbers::pi * z / ah);
    switch (kind) {
        case RandomFieldKind::Even:
            return v;
        case RandomFieldKind::ZeroOnBoundary:
            return v * (R * R - r * r) * (ah * ah - z * z) / (R * R * ah * ah);
        case RandomFieldKind::ZeroAtWall:
            return v * (R * R - r * r) / (R * R);
    }
    return v;
}

ScalarField RandomFieldSpec::realize(const GridPtr& grid) const {
    ScalarField out(grid, Parity::Even);
    out.fill([&](double r, double z) { return (*this)(*grid, r, z); });
    if (kind != RandomFieldKind::Even) {
        out.values().row(grid->nr).setZero();
        if (kind == RandomFieldKind::ZeroOnBoundary) {
            out.values().col(0).setZero();
            out.values().col(grid->nz).setZero();
        }
    }
    return out;
}

ScalarField random_smooth_field(const GridPtr& grid, std::mt19937_64& rng,
                                RandomFieldKind kind) {
    return RandomFieldSpec::draw(rng, kind).realize(grid);
}

}  // namespace axicyl
