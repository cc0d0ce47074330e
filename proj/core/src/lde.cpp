#include "erw/lde.hpp"

#include <cmath>
#include <stdexcept>

namespace erw::analytic {

std::vector<double> solve_lde1(double a, const std::vector<double>& b, double x1, long n) {
    if (n < 1) throw std::invalid_argument("solve_lde1: n must be >= 1");
    if (static_cast<long>(b.size()) + 1 < n)
        throw std::invalid_argument("solve_lde1: forcing sequence too short");
    std::vector<double> x(static_cast<size_t>(n));
    x[0] = x1;
    for (long j = 1; j < n; ++j) x[j] = a * x[j - 1] + b[j - 1];
    return x;
}

std::vector<double> solve_lde1_const(double a, double b, double x1, long n) {
    if (n < 1) throw std::invalid_argument("solve_lde1: n must be >= 1");
    std::vector<double> x(static_cast<size_t>(n));
    x[0] = x1;
    for (long j = 1; j < n; ++j) x[j] = a * x[j - 1] + b;
    return x;
}

double lde1_fixed_point(double a, double b) {
    if (!(std::fabs(a) < 1.0))
        throw std::invalid_argument("lde1_fixed_point: requires |a| < 1");
    return b / (1.0 - a);
}

double lde1_asymptote_power(double a, double b, double gamma, long n) {
    if (!(std::fabs(a) < 1.0))
        throw std::invalid_argument("lde1_asymptote_power: requires |a| < 1");
    if (!(gamma > -1.0))
        throw std::invalid_argument("lde1_asymptote_power: requires gamma > -1");
    const double b_prev = b * std::pow(static_cast<double>(n - 1), gamma);
    return b_prev / (1.0 - a);
}

double Lde2Roots::spectral_radius() const {
    return std::max(std::abs(lambda1), std::abs(lambda2));
}

std::vector<double> solve_lde2(double a, double b, const std::vector<double>& d, double x1,
                               double x2, long n) {
    if (n < 1) throw std::invalid_argument("solve_lde2: n must be >= 1");
    std::vector<double> x(static_cast<size_t>(n));
    x[0] = x1;
    if (n >= 2) x[1] = x2;
    if (n > 2 && static_cast<long>(d.size()) + 2 < n)
        throw std::invalid_argument("solve_lde2: forcing sequence too short");
    for (long j = 2; j < n; ++j) x[j] = a * x[j - 1] + b * x[j - 2] + d[j - 2];
    return x;
}

std::vector<double> solve_lde2_const(double a, double b, double d, double x1, double x2, long n) {
    if (n < 1) throw std::invalid_argument("solve_lde2: n must be >= 1");
    std::vector<double> x(static_cast<size_t>(n));
    x[0] = x1;
    if (n >= 2) x[1] = x2;
    for (long j = 2; j < n; ++j) x[j] = a * x[j - 1] + b * x[j - 2] + d;
    return x;
}

Lde2Roots lde2_roots(double a, double b) {
    const double disc = a * a + 4.0 * b;
    if (disc == 0.0)
        throw std::invalid_argument("lde2_roots: a^2 + 4b = 0, root form degenerates");
    const std::complex<double> s = std::sqrt(std::complex<double>(disc, 0.0));
    return {(a + s) / 2.0, (a - s) / 2.0};
}

double lde2_fixed_point(double a, double b, double d) {
    if (a + b == 1.0)
        throw std::invalid_argument("lde2_fixed_point: requires a + b != 1");
    return d / (1.0 - a - b);
}

double lde2_closed_form(double a, double b, double d, double x1, double x2, long j) {
    if (j < 1) throw std::invalid_argument("lde2_closed_form: j must be >= 1");
    const auto roots = lde2_roots(a, b);
    const double y = d == 0.0 ? 0.0 : lde2_fixed_point(a, b, d);
    const std::complex<double> l1 = roots.lambda1, l2 = roots.lambda2;
    // c1 l1 + c2 l2 = x1 - y,  c1 l1^2 + c2 l2^2 = x2 - y
    const std::complex<double> det = l1 * l2 * (l2 - l1);
    const std::complex<double> c1 = (l2 * l2 * (x1 - y) - l2 * (x2 - y)) / det;
    const std::complex<double> c2 = (l1 * (x2 - y) - l1 * l1 * (x1 - y)) / det;
    const std::complex<double> v =
        c1 * std::pow(l1, static_cast<double>(j)) + c2 * std::pow(l2, static_cast<double>(j));
    return v.real() + y;
}

}  // namespace erw::analytic
