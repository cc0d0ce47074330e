#pragma once

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace erw::oracle {

// Exact law of the partial sum T_n. The support is the full parity lattice
// {-n, -n+2, ..., n}; probs[i] corresponds to support[i] = -n + 2i.
template <class Real>
struct BasicExactPMF {
    long n = 0;
    std::vector<long> support;
    std::vector<Real> probs;

    const Real& prob_of(long t) const {
        if (std::labs(t) > n || (((t ^ n) & 1L) != 0))
            throw std::invalid_argument("prob_of: value off the parity lattice");
        return probs[static_cast<size_t>((t + n) / 2)];
    }

    Real total_mass() const {
        Real s(0);
        for (const auto& q : probs) s += q;
        return s;
    }

    Real moment(int order) const {
        Real s(0);
        for (size_t i = 0; i < probs.size(); ++i) {
            Real term = probs[i];
            for (int j = 0; j < order; ++j) term *= Real(support[i]);
            s += term;
        }
        return s;
    }

    Real mean() const { return moment(1); }

    Real variance() const {
        const Real m = mean();
        return moment(2) - m * m;
    }
};

using ExactPMF = BasicExactPMF<double>;

}  // namespace erw::oracle
