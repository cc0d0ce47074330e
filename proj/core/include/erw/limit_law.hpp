#pragma once

#include <string>
#include <vector>

namespace erw::analytic {

// Finite mixture of point atoms and normal components, the universal target
// of every limit statement here: laws of S_n/n are pure atom mixtures,
// normalized CLT statistics are Gaussian mixtures.
struct LimitLaw {
    struct Atom {
        double location = 0.0;
        double weight = 0.0;
    };
    struct Gaussian {
        double mean = 0.0;
        double variance = 1.0;
        double weight = 0.0;
    };

    std::vector<Atom> atoms;
    std::vector<Gaussian> gaussians;

    static LimitLaw point(double location);
    static LimitLaw normal(double mean, double variance);

    // weights >= 0 summing to 1 within 1e-12, variances > 0
    bool valid() const;
    void require_valid() const;

    bool discrete() const { return gaussians.empty(); }
    bool has_atoms() const { return !atoms.empty(); }

    double total_weight() const;
    double mean() const;
    double variance() const;

    // Merges atoms closer than tol (collapsed branches, e.g. p = 1/2) and
    // sorts them by location.
    LimitLaw merged(double tol = 1e-12) const;

    std::string describe() const;
};

}  // namespace erw::analytic
