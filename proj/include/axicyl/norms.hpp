/// @file norms.hpp
/// @brief Lebesgue norms under the cylindrical measure, weighted r-power
///        norms, gradient norms, per-step norm history, mixed space-time
///        norms, and the energy-space (V-norm) accumulator.

#pragma once

#include "axicyl/field.hpp"

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace axicyl {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum w |f|^p)^(1/p) for finite p >= 1; max over all nodes for p = inf.
double lp_norm(const ScalarField& f, double p);

/// (sum w |f|^q r^(-s))^(1/q), 0 <= s < 2; the axis node carries zero weight.
/// s = 0 follows bit-for-bit the same summation order as lp_norm.
double weighted_lq(const ScalarField& f, double q, double s);

/// sqrt(sum w (f_r^2 + f_z^2)) — the full |grad f| for an axisymmetric scalar.
double grad_l2(const ScalarField& f);

/// sum w f^2 / r^2 (metric term of the velocity energy identity).
double metric_integral_sq(const ScalarField& f);

/// Running sup of |w(t)|_2 plus the time-trapezoid of |grad w|_2^2;
/// value = sup + sqrt(integral).
class VNormAccumulator {
public:
    void update(double t, double l2_value, double grad_l2_value);
    double value() const;
    double sup_so_far() const { return sup_; }
    double grad_sq_integral() const { return grad_sq_int_; }
    bool empty() const { return !has_sample_; }

private:
    bool has_sample_ = false;
    double sup_ = 0.0;
    double grad_sq_int_ = 0.0;
    double last_t_ = 0.0;
    double last_grad_sq_ = 0.0;
};

/// Aligned per-step time series of named scalar diagnostics. Every key is
/// written once per record; timestamps are strictly increasing.
class NormHistory {
public:
    void start_record(double t);
    void put(const std::string& key, double value);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& series(const std::string& key) const;
    std::vector<std::string> keys() const;
    std::size_t records() const { return times_.size(); }
    bool empty() const { return times_.empty(); }
    double last(const std::string& key) const;

    /// Trapezoid time integral of the series.
    double time_integral(const std::string& key) const;
    /// Trapezoid time integral of the squared series.
    double time_integral_sq(const std::string& key) const;
    double running_max(const std::string& key) const;
    double running_min(const std::string& key) const;

private:
    std::vector<double> times_;
    std::map<std::string, std::vector<double>> values_;
};

/// L_q in time (trapezoid; q = inf takes the running max) of a recorded
/// spatial-norm series.
double mixed_norm(const NormHistory& history, const std::string& key, double q);

/// V-norm of a recorded field at final time: running max of its L2 series
/// plus sqrt of the time integral of its squared grad-L2 series.
double v_norm_from_history(const NormHistory& history, const std::string& l2_key,
                           const std::string& grad_key);

/// Canonical series-key suffix for an L_p norm ("inf" for p = infinity).
std::string p_token(double p);
inline std::string norm_key(const std::string& field, double p) {
    return field + ".L" + p_token(p);
}
inline std::string grad_key(const std::string& field) { return field + ".grad2"; }

}  // namespace axicyl
