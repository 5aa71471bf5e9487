#include "axicyl/quadrature.hpp"

#include <cmath>

namespace axicyl {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b,
             double fa, double fm, double fb, double whole, double tol,
             int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double lo,
                          double hi, double tol, int max_depth) {
    if (!(hi > lo)) return 0.0;
    const double m = 0.5 * (lo + hi);
    const double fa = f(lo), fm = f(m), fb = f(hi);
    const double whole = simpson(fa, fm, fb, hi - lo);
    return adapt(f, lo, hi, fa, fm, fb, whole, tol, max_depth);
}

double integrate_panels(const std::function<double(double)>& f, double lo,
                        double hi, double tol, int panels) {
    if (!(hi > lo)) return 0.0;
    double sum = 0.0;
    const double h = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k)
        sum += integrate_adaptive(f, lo + k * h, lo + (k + 1) * h, tol / panels);
    return sum;
}

}  // namespace axicyl
