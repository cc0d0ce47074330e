#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace erw {

// Per-path output statistic: the raw final sum T_n, the drift statistic
// T_n/n, or a centered-and-scaled CLT statistic (T_n - c_n)/s_n. Fixed
// centering subtracts the deterministic drift n*fixed_slope; random centering
// subtracts n * coeff * (mean of the path's first prefix_len steps), which
// collapses start branches onto a single mixture.
struct StatisticSpec {
    enum class Kind { raw, over_n, clt };
    enum class Centering { none, fixed, random };
    enum class Scale { sqrt_n, sqrt_n_log_n };

    Kind kind = Kind::raw;
    Centering centering = Centering::none;
    Scale scale = Scale::sqrt_n;
    double fixed_slope = 0.0;
    double coeff = 0.0;
    int prefix_len = 0;

    static StatisticSpec raw() { return {}; }
    static StatisticSpec over_n() {
        StatisticSpec s;
        s.kind = Kind::over_n;
        return s;
    }
    static StatisticSpec clt_none(Scale scale = Scale::sqrt_n) {
        StatisticSpec s;
        s.kind = Kind::clt;
        s.scale = scale;
        return s;
    }

    double apply(double t, long n, double prefix_mean) const {
        switch (kind) {
            case Kind::raw: return t;
            case Kind::over_n: return t / static_cast<double>(n);
            case Kind::clt: {
                double center = 0.0;
                if (centering == Centering::fixed) center = fixed_slope * static_cast<double>(n);
                if (centering == Centering::random)
                    center = coeff * prefix_mean * static_cast<double>(n);
                const double nn = static_cast<double>(n);
                const double s = scale == Scale::sqrt_n ? std::sqrt(nn)
                                                        : std::sqrt(nn * std::log(nn));
                if (!(s > 0.0))
                    throw std::invalid_argument("statistic: scale degenerate at n = " +
                                                std::to_string(n));
                return (t - center) / s;
            }
        }
        return t;
    }

    std::string name() const {
        switch (kind) {
            case Kind::raw: return "raw";
            case Kind::over_n: return "over-n";
            case Kind::clt:
                switch (centering) {
                    case Centering::none: return "clt:none";
                    case Centering::fixed: return "clt:fixed";
                    case Centering::random: return "clt:random";
                }
        }
        return "?";
    }
};

}  // namespace erw
