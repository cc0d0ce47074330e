#pragma once

#include <string>
#include <vector>

namespace erw {

// Discrete distribution of the independent step multiplier R. Scaling a
// +1-started walk by a draw of R turns every limit law for the base walk into
// the corresponding mixture law; R = +-1 with probabilities {r, 1-r}
// reproduces the random-start walk in distribution.
struct StepMultiplier {
    struct Atom {
        double value = 0.0;
        double weight = 0.0;
    };
    std::vector<Atom> atoms;

    static StepMultiplier identity() { return StepMultiplier{{{1.0, 1.0}}}; }
    static StepMultiplier sign(double r) { return StepMultiplier{{{1.0, r}, {-1.0, 1.0 - r}}}; }
    static StepMultiplier uniform(const std::vector<double>& values);

    // weights nonnegative and summing to 1 within 1e-12
    bool valid() const;
    void require_valid() const;

    double moment(int order) const;  // E(R^order)
    double prob_zero() const;
    std::string describe() const;
};

}  // namespace erw
