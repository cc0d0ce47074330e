#include "erw/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace erw::analytic {

double log_gamma_scaling(long n, double p) {
    if (n < 1) throw std::invalid_argument("gamma_scaling: n must be >= 1");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("gamma_scaling: requires 0 < p < 1");
    return std::lgamma(static_cast<double>(n)) + std::lgamma(2.0 * p) -
           std::lgamma(static_cast<double>(n) + 2.0 * p - 1.0);
}

double gamma_scaling(long n, double p) { return std::exp(log_gamma_scaling(n, p)); }

}  // namespace erw::analytic
