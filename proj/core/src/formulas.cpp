#include "erw/formulas.hpp"

#include <cmath>
#include <stdexcept>

#include "erw/errors.hpp"
#include "erw/gamma.hpp"

namespace erw::analytic {

namespace {

using Kind = MemorySpec::Kind;

void require_catalog_domain(const WalkParams& params, const MemorySpec& spec, long n) {
    require_valid(params, spec, /*strict=*/true);
    if (n < 1) throw std::invalid_argument("formula: n must be >= 1");
    if (static_cast<long>(params.start.size()) > n)
        throw std::invalid_argument("formula: start prefix longer than n");
}

[[noreturn]] void no_formula(const MemorySpec& spec, const WalkParams& params,
                             const char* quantity) {
    throw NoFormulaError(std::string("no ") + quantity + " formula in catalog for model '" +
                         spec.name() + "' with " +
                         (params.fixed_start() ? "fixed start" : "random start") +
                         "; fall back to the exact oracle");
}

double geometric_sum(double q, long terms) {  // q^0 + ... + q^{terms-1}
    if (terms <= 0) return 0.0;
    return (1.0 - std::pow(q, static_cast<double>(terms))) / (1.0 - q);
}

// ---- first:1 ---------------------------------------------------------------

double mean_first1_fixed(double p, const std::vector<int>& s, long n) {
    const double q = 2.0 * p - 1.0;
    if (n == 1) return s[0];
    if (s.size() == 1) return s[0] * (1.0 + (n - 1) * q);
    return s[0] + s[1] + (n - 2) * q * s[0];  // steps 3.. copy X_1 only
}

double second_moment_first1_plus(double p, long n) {
    // E(T_n^2) with X_1 = +1; exact telescoped sum, valid for all n >= 1
    const double q = 2.0 * p - 1.0;
    return 1.0 + q * q * (n - 1.0) * n + (4.0 * q * (1.0 - p) + 1.0) * (n - 1.0);
}

double var_first1_fixed(double p, const std::vector<int>& s, long n) {
    (void)s;
    const long extra = n - static_cast<long>(s.size());
    // steps after the prefix are i.i.d. with per-step variance 4p(1-p)
    return 4.0 * p * (1.0 - p) * std::max<long>(extra, 0);
}

// ---- first:2 ---------------------------------------------------------------

double mean_first2_fixed(double p, const std::vector<int>& s, long n) {
    const double q = 2.0 * p - 1.0;
    if (s.size() == 2) {
        if (n == 1) return s[0];
        const int s2 = s[0] + s[1];
        return s2 + (n - 2) * q * s2 / 2.0;
    }
    // one fixed step: X_2 copies it with probability p
    if (n == 1) return s[0];
    return s[0] + q * s[0] + (n - 2) * q * s[0] * (1.0 + q) / 2.0;
}

double var_first2_fixed(double p, const std::vector<int>& s, long n) {
    const double q = 2.0 * p - 1.0;
    if (s.size() == 2) {
        if (n <= 2) return 0.0;
        if (s[0] == s[1]) return 4.0 * p * (1.0 - p) * (n - 2);
        return static_cast<double>(n - 2);  // mixed pair: symmetric coin flips
    }
    // one fixed step: mix the equal pair (weight p) with the opposite pair
    if (n == 1) return 0.0;
    const double mean_eq = 2.0 + (n - 2) * q;  // up to the sign of s[0]
    const double var_eq = n <= 2 ? 0.0 : 4.0 * p * (1.0 - p) * (n - 2);
    const double var_mix = n <= 2 ? 0.0 : static_cast<double>(n - 2);
    const double mean = p * mean_eq;  // mixed branch mean is 0
    return p * (var_eq + mean_eq * mean_eq) + (1.0 - p) * var_mix - mean * mean;
}

// ---- last:1 ----------------------------------------------------------------

double mean_last1_fixed(double p, const std::vector<int>& s, long n) {
    const double q = 2.0 * p - 1.0;
    if (s.size() == 1)
        return s[0] * (1.0 - std::pow(q, static_cast<double>(n))) / (2.0 * (1.0 - p));
    if (n == 1) return s[0];
    // conditioned on X_2 as well: E(X_j) = q^{j-2} s_2 for j >= 2
    return s[0] + s[1] * (1.0 - std::pow(q, static_cast<double>(n - 1))) / (2.0 * (1.0 - p));
}

double second_moment_last1(double p, double t0, double tx0, long j0, long n) {
    // E(T_n^2) from E(T_{j+1}^2) = E(T_j^2) + 2q E(T_j X_j) + 1 and the
    // mixed-moment recursion E(T_{j+1} X_{j+1}) = 1 + q E(T_j X_j), solved in
    // closed form from the prefix values (t0 = E(T_{j0}^2), tx0 = E(T_{j0}X_{j0})).
    const double q = 2.0 * p - 1.0;
    const double fp = 1.0 / (2.0 * (1.0 - p));  // fixed point of x -> qx + 1
    // sum over j = j0..n-1 of E(T_j X_j) = fp + q^{j-j0} (tx0 - fp)
    const double terms = static_cast<double>(n - j0);
    const double sum_tx = fp * terms + (tx0 - fp) * geometric_sum(q, n - j0);
    return t0 + 2.0 * q * sum_tx + terms;
}

double var_last1_fixed(double p, const std::vector<int>& s, long n) {
    const double m = mean_last1_fixed(p, s, n);
    double e2;
    if (s.size() == 1) {
        e2 = second_moment_last1(p, 1.0, 1.0, 1, n);  // T_1 X_1 = 1
    } else {
        const double t2 = static_cast<double>(s[0] + s[1]);
        e2 = second_moment_last1(p, t2 * t2, t2 * s[1], 2, n);
    }
    return e2 - m * m;
}

// ---- last:2 ----------------------------------------------------------------

double mean_limit_last2(double p, const std::vector<int>& s) {
    // stationary limit of E(T_n): (mu_1 (1-a) + mu_2) / (1-2a), a = p - 1/2
    const double a = p - 0.5;
    const double mu1 = s[0];
    const double mu2 = s.size() == 2 ? s[1] : (2.0 * a) * s[0];
    return (mu1 * (1.0 - a) + mu2) / (1.0 - 2.0 * a);
}

// ---- mixed-memory slopes ---------------------------------------------------

double drift_first1_last1(double p) { return (2.0 * p - 1.0) / (3.0 - 2.0 * p); }
double offset_first1_last1(double p) {
    return 8.0 * (1.0 - p) / ((3.0 - 2.0 * p) * (3.0 - 2.0 * p));
}
double drift_first2_last1(double p) { return (2.0 * p - 1.0) / (2.0 - p); }
double offset_first2_last1(double p) {
    return 3.0 * (1.0 - p) * (7.0 - 2.0 * p) / (2.0 * (2.0 - p) * (2.0 - p));
}

}  // namespace

double sigma2_last2(double p) {
    return 1.0 + (2.0 * p - 1.0) * (5.0 - 2.0 * p) / (2.0 * (1.0 - p) * (3.0 - 2.0 * p));
}

double sigma2_first1_last1(double p) {
    const double c = 3.0 - 2.0 * p;
    return 1.0 + (2.0 * p - 1.0) * (4.0 * p * p - 24.0 * p + 19.0) / (c * c * c);
}

double sigma2_first2_last1(double p) {
    const double c = 2.0 - p;
    return 1.0 + (2.0 * p - 1.0) * (5.0 - 5.0 * p - p * p) / (c * c * c);
}

double sigma2_first2_last1_mixed(double p) { return (1.0 + p) / (2.0 - p); }

FormulaResult mean_formula(const MemorySpec& spec, const WalkParams& params, long n) {
    require_catalog_domain(params, spec, n);
    const double p = params.p;
    const double q = 2.0 * p - 1.0;
    const auto& s = params.start;
    const bool fixed = params.fixed_start();
    const double rsign = 2.0 * params.r - 1.0;

    switch (spec.kind()) {
        case Kind::Full: {
            // E(T_n | prefix) telescopes through E(T_{j+1}) = E(T_j)(1 + q/j)
            const long j0 = fixed ? static_cast<long>(s.size()) : 1;
            const double t0 = fixed ? params.start_sum() : rsign;
            double log_growth = 0.0;
            if (n > j0)
                log_growth = std::lgamma(static_cast<double>(n) + q) -
                             std::lgamma(static_cast<double>(j0) + q) -
                             (std::lgamma(static_cast<double>(n)) -
                              std::lgamma(static_cast<double>(j0)));
            return {t0 * std::exp(log_growth), true, "full memory mean (gamma product)"};
        }
        case Kind::FirstM: {
            if (spec.m() == 1) {
                const double v = fixed ? mean_first1_fixed(p, s, n)
                                       : rsign * mean_first1_fixed(p, {+1}, n);
                return {v, true, "first:1 mean 1+(n-1)(2p-1), sign/weights by start"};
            }
            if (spec.m() == 2) {
                double v;
                if (fixed)
                    v = mean_first2_fixed(p, s, n);
                else if (n == 1)
                    v = rsign;
                else
                    v = rsign * p * (2.0 + (n - 2) * q);  // mixed prefixes have mean 0
                return {v, true, "first:2 mean 2+(n-2)(2p-1) over start branches"};
            }
            no_formula(spec, params, "mean");
        }
        case Kind::LastK: {
            if (spec.k() == 1) {
                const double v = fixed ? mean_last1_fixed(p, s, n)
                                       : rsign * mean_last1_fixed(p, {+1}, n);
                return {v, true, "last:1 mean (1-(2p-1)^n)/(2(1-p))"};
            }
            if (spec.k() == 2) {
                const double v = fixed ? mean_limit_last2(p, s)
                                       : rsign * mean_limit_last2(p, {+1});
                return {v, false, "last:2 stationary mean (2p+1)/(4(1-p)) by start sign"};
            }
            no_formula(spec, params, "mean");
        }
        case Kind::FirstMLastK: {
            const int m = spec.m(), k = spec.k();
            if (m == 1 && k == 1) {
                const double per_start = n * drift_first1_last1(p) + offset_first1_last1(p);
                const double v = fixed ? s[0] * per_start : rsign * per_start;
                return {v, false, "first:1+last:1 mean n(2p-1)/(3-2p) + 8(1-p)/(3-2p)^2"};
            }
            if (m == 2 && k == 1) {
                const double per_equal = n * drift_first2_last1(p) + offset_first2_last1(p);
                double v;
                if (fixed && s.size() == 2) {
                    if (s[0] != s[1])
                        return {0.0, true, "first:2+last:1 mixed-start mean, identically 0"};
                    v = s[0] * per_equal;
                } else if (fixed) {
                    v = s[0] * p * per_equal;  // X_2 matches with probability p
                } else {
                    v = rsign * p * per_equal;
                }
                return {v, false, "first:2+last:1 mean n(2p-1)/(2-p) + offset over branches"};
            }
            if (m == 1 && k == 2) {
                const double slope = q / (5.0 - 4.0 * p);
                const double v = (fixed ? s[0] : rsign) * slope * n;
                return {v, false, "first:1+last:2 mean slope (2p-1)/(5-4p)"};
            }
            if (m == 2 && k == 2) {
                if (fixed) no_formula(spec, params, "mean");
                const double v = rsign * p * q / (3.0 - 2.0 * p) * n;
                return {v, false, "first:2+last:2 mean slope p(2p-1)/(3-2p), random start"};
            }
            no_formula(spec, params, "mean");
        }
        case Kind::AllButFirstK:
            no_formula(spec, params, "mean");
    }
    no_formula(spec, params, "mean");
}

FormulaResult variance_formula(const MemorySpec& spec, const WalkParams& params, long n) {
    require_catalog_domain(params, spec, n);
    const double p = params.p;
    const double q = 2.0 * p - 1.0;
    const auto& s = params.start;
    const bool fixed = params.fixed_start();
    const double rsign = 2.0 * params.r - 1.0;

    switch (spec.kind()) {
        case Kind::FirstM: {
            if (spec.m() == 1) {
                if (fixed)
                    return {var_first1_fixed(p, s, n), true, "first:1 variance 4p(1-p)(n-1)"};
                const double e2 = second_moment_first1_plus(p, n);
                const double m1 = rsign * mean_first1_fixed(p, {+1}, n);
                return {e2 - m1 * m1, true, "first:1 random-start variance"};
            }
            if (spec.m() == 2) {
                if (fixed)
                    return {var_first2_fixed(p, s, n), true,
                            "first:2 variance 4p(1-p)(n-2) / (n-2) by branch"};
                if (n == 1) return {1.0 - rsign * rsign, true, "first:2 variance at n=1"};
                const double mean_eq = 2.0 + (n - 2) * q;
                const double e2_eq =
                    (n <= 2 ? 0.0 : 4.0 * p * (1.0 - p) * (n - 2)) + mean_eq * mean_eq;
                const double e2_mix = n <= 2 ? 0.0 : static_cast<double>(n - 2);
                const double e2 = p * e2_eq + (1.0 - p) * e2_mix;
                const double m1 = rsign * p * mean_eq;
                return {e2 - m1 * m1, true, "first:2 random-start variance"};
            }
            no_formula(spec, params, "variance");
        }
        case Kind::LastK: {
            if (spec.k() == 1) {
                if (fixed)
                    return {var_last1_fixed(p, s, n), true, "last:1 variance (exact telescope)"};
                const double e2 = second_moment_last1(p, 1.0, 1.0, 1, n);
                const double m1 = rsign * mean_last1_fixed(p, {+1}, n);
                return {e2 - m1 * m1, true, "last:1 random-start variance"};
            }
            if (spec.k() == 2)
                return {n * sigma2_last2(p), false,
                        "last:2 variance slope 1+(2p-1)(5-2p)/(2(1-p)(3-2p))"};
            no_formula(spec, params, "variance");
        }
        case Kind::FirstMLastK: {
            const int m = spec.m(), k = spec.k();
            if (m == 1 && k == 1) {
                if (fixed)
                    return {n * sigma2_first1_last1(p), false, "first:1+last:1 variance slope"};
                const double mu = drift_first1_last1(p);
                // Var(S_n)/n^2 -> mu^2 (1 - (2r-1)^2) = 4 r (1-r) mu^2
                return {static_cast<double>(n) * n * mu * mu * (1.0 - rsign * rsign), false,
                        "first:1+last:1 random-start variance ~ 4r(1-r)((2p-1)/(3-2p))^2 n^2"};
            }
            if (m == 2 && k == 1) {
                if (fixed && s.size() == 2) {
                    if (s[0] != s[1])
                        return {n * sigma2_first2_last1_mixed(p), false,
                                "first:2+last:1 mixed-start variance slope (1+p)/(2-p)"};
                    return {n * sigma2_first2_last1(p), false,
                            "first:2+last:1 equal-start variance slope"};
                }
                const double mu = drift_first2_last1(p);
                if (fixed)  // one fixed step: equal pair with probability p
                    return {static_cast<double>(n) * n * p * (1.0 - p) * mu * mu, false,
                            "first:2+last:1 one-step-start variance ~ p(1-p)mu^2 n^2"};
                return {static_cast<double>(n) * n * p * mu * mu *
                            (1.0 - p * rsign * rsign),
                        false,
                        "first:2+last:1 random-start variance ~ p(1-p(2r-1)^2)mu^2 n^2"};
            }
            no_formula(spec, params, "variance");
        }
        default:
            no_formula(spec, params, "variance");
    }
}

}  // namespace erw::analytic
