#include "erw/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace erw::analytic {

LimitLaw LimitLaw::point(double location) { return LimitLaw{{{location, 1.0}}, {}}; }

LimitLaw LimitLaw::normal(double mean, double variance) {
    return LimitLaw{{}, {{mean, variance, 1.0}}};
}

bool LimitLaw::valid() const {
    if (atoms.empty() && gaussians.empty()) return false;
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.weight >= 0.0) || !std::isfinite(a.location)) return false;
        total += a.weight;
    }
    for (const auto& g : gaussians) {
        if (!(g.weight >= 0.0) || !(g.variance > 0.0) || !std::isfinite(g.mean)) return false;
        total += g.weight;
    }
    return std::fabs(total - 1.0) <= 1e-12;
}

void LimitLaw::require_valid() const {
    if (!valid())
        throw std::invalid_argument(
            "limit law: weights must be nonnegative and sum to 1, variances positive");
}

double LimitLaw::total_weight() const {
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight;
    for (const auto& g : gaussians) total += g.weight;
    return total;
}

double LimitLaw::mean() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight * a.location;
    for (const auto& g : gaussians) m += g.weight * g.mean;
    return m;
}

double LimitLaw::variance() const {
    const double m = mean();
    double s = 0.0;
    for (const auto& a : atoms) s += a.weight * a.location * a.location;
    for (const auto& g : gaussians) s += g.weight * (g.variance + g.mean * g.mean);
    return s - m * m;
}

LimitLaw LimitLaw::merged(double tol) const {
    LimitLaw out;
    auto gs = gaussians;
    std::sort(gs.begin(), gs.end(), [](const Gaussian& x, const Gaussian& y) {
        return x.variance != y.variance ? x.variance > y.variance : x.mean < y.mean;
    });
    for (const auto& g : gs) {
        if (g.weight == 0.0) continue;
        if (!out.gaussians.empty() &&
            std::fabs(out.gaussians.back().variance - g.variance) <= tol &&
            std::fabs(out.gaussians.back().mean - g.mean) <= tol) {
            out.gaussians.back().weight += g.weight;
        } else {
            out.gaussians.push_back(g);
        }
    }
    auto sorted = atoms;
    std::sort(sorted.begin(), sorted.end(),
              [](const Atom& x, const Atom& y) { return x.location < y.location; });
    for (const auto& a : sorted) {
        if (a.weight == 0.0) continue;
        if (!out.atoms.empty() && std::fabs(out.atoms.back().location - a.location) <= tol) {
            // weighted merge keeps the mean exact when locations differ below tol
            auto& last = out.atoms.back();
            const double w = last.weight + a.weight;
            last.location = (last.location * last.weight + a.location * a.weight) / w;
            last.weight = w;
        } else {
            out.atoms.push_back(a);
        }
    }
    return out;
}

std::string LimitLaw::describe() const {
    std::string out;
    char buf[96];
    for (const auto& a : atoms) {
        std::snprintf(buf, sizeof buf, "%s%g*delta(%g)", out.empty() ? "" : " + ", a.weight,
                      a.location);
        out += buf;
    }
    for (const auto& g : gaussians) {
        std::snprintf(buf, sizeof buf, "%s%g*N(%g,%g)", out.empty() ? "" : " + ", g.weight,
                      g.mean, g.variance);
        out += buf;
    }
    return out;
}

}  // namespace erw::analytic
