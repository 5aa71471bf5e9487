#include "axicyl/norms.hpp"

#include "axicyl/fieldops.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace axicyl {

double weighted_lq(const ScalarField& f, double q, double s) {
    if (q < 1.0) throw std::invalid_argument("norm exponent must be >= 1");
    if (s < 0.0 || s >= 2.0)
        throw std::invalid_argument("weight exponent s must lie in [0, 2)");
    const Grid& g = f.grid();
    if (q == kInfinity) {
        if (s != 0.0)
            throw std::invalid_argument("p = inf combined with r-weight unsupported");
        return f.values().abs().maxCoeff();
    }
    double sum = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i) {
            const double w = g.w(i, j);
            if (w == 0.0) continue;
            double term = w * std::pow(std::abs(f(i, j)), q);
            if (s != 0.0) term *= std::pow(g.r(i), -s);
            sum += term;
        }
    return std::pow(sum, 1.0 / q);
}

double lp_norm(const ScalarField& f, double p) {
    if (p == kInfinity) return f.values().abs().maxCoeff();
    return weighted_lq(f, p, 0.0);
}

double grad_l2(const ScalarField& f) {
    ScalarField fr = ddr(f), fz = ddz(f);
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 0; i <= g.nr; ++i)
            sum += g.w(i, j) * (fr(i, j) * fr(i, j) + fz(i, j) * fz(i, j));
    return std::sqrt(sum);
}

double metric_integral_sq(const ScalarField& f) {
    const Grid& g = f.grid();
    double sum = 0.0;
    for (int j = 0; j <= g.nz; ++j)
        for (int i = 1; i <= g.nr; ++i)
            sum += g.w(i, j) * f(i, j) * f(i, j) / (g.r(i) * g.r(i));
    return sum;
}

void VNormAccumulator::update(double t, double l2_value, double grad_l2_value) {
    if (has_sample_ && !(t > last_t_))
        throw std::invalid_argument("VNormAccumulator: non-monotone time");
    const double gsq = grad_l2_value * grad_l2_value;
    if (has_sample_) grad_sq_int_ += 0.5 * (gsq + last_grad_sq_) * (t - last_t_);
    sup_ = std::max(sup_, l2_value);
    last_t_ = t;
    last_grad_sq_ = gsq;
    has_sample_ = true;
}

double VNormAccumulator::value() const { return sup_ + std::sqrt(grad_sq_int_); }

void NormHistory::start_record(double t) {
    if (!times_.empty() && !(t > times_.back()))
        throw std::invalid_argument("NormHistory: non-monotone record time");
    times_.push_back(t);
}

void NormHistory::put(const std::string& key, double value) {
    auto& v = values_[key];
    if (v.size() + 1 != times_.size())
        throw std::logic_error("NormHistory: series '" + key +
                               "' out of step with record grid");
    v.push_back(value);
}

const std::vector<double>& NormHistory::series(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("NormHistory: no series named '" + key + "'");
    return it->second;
}

std::vector<std::string> NormHistory::keys() const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
}

double NormHistory::last(const std::string& key) const { return series(key).back(); }

double NormHistory::time_integral(const std::string& key) const {
    const auto& v = series(key);
    double s = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k)
        s += 0.5 * (v[k] + v[k - 1]) * (times_[k] - times_[k - 1]);
    return s;
}

double NormHistory::time_integral_sq(const std::string& key) const {
    const auto& v = series(key);
    double s = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k)
        s += 0.5 * (v[k] * v[k] + v[k - 1] * v[k - 1]) * (times_[k] - times_[k - 1]);
    return s;
}

double NormHistory::running_max(const std::string& key) const {
    const auto& v = series(key);
    double m = v.front();
    for (double x : v) m = std::max(m, x);
    return m;
}

double NormHistory::running_min(const std::string& key) const {
    const auto& v = series(key);
    double m = v.front();
    for (double x : v) m = std::min(m, x);
    return m;
}

double mixed_norm(const NormHistory& history, const std::string& key, double q) {
    if (history.empty()) throw ConfigError("mixed_norm: empty history");
    if (q == kInfinity) return history.running_max(key);
    if (q < 1.0) throw std::invalid_argument("mixed_norm: q must be >= 1");
    const auto& v = history.series(key);
    const auto& t = history.times();
    double s = 0.0;
    for (std::size_t k = 1; k < v.size(); ++k)
        s += 0.5 * (std::pow(std::abs(v[k]), q) + std::pow(std::abs(v[k - 1]), q)) *
             (t[k] - t[k - 1]);
    return std::pow(s, 1.0 / q);
}

double v_norm_from_history(const NormHistory& history, const std::string& l2_key,
                           const std::string& grad_key) {
    return history.running_max(l2_key) + std::sqrt(history.time_integral_sq(grad_key));
}

std::string p_token(double p) {
    if (p == kInfinity) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", p);
    return buf;
}

}  // namespace axicyl
