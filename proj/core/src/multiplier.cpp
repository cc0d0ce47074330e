#include "erw/multiplier.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace erw {

StepMultiplier StepMultiplier::uniform(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("multiplier: no atoms");
    StepMultiplier m;
    const double w = 1.0 / static_cast<double>(values.size());
    for (double v : values) m.atoms.push_back({v, w});
    return m;
}

bool StepMultiplier::valid() const {
    if (atoms.empty()) return false;
    double total = 0.0;
    for (const auto& a : atoms) {
        if (!(a.weight >= 0.0) || !std::isfinite(a.value)) return false;
        total += a.weight;
    }
    return std::fabs(total - 1.0) <= 1e-12;
}

void StepMultiplier::require_valid() const {
    if (!valid())
        throw std::invalid_argument(
            "multiplier: weights must be nonnegative and sum to 1 within 1e-12");
}

double StepMultiplier::moment(int order) const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.weight * std::pow(a.value, order);
    return m;
}

double StepMultiplier::prob_zero() const {
    double w = 0.0;
    for (const auto& a : atoms)
        if (a.value == 0.0) w += a.weight;
    return w;
}

std::string StepMultiplier::describe() const {
    std::string out = "R{";
    char buf[64];
    for (size_t i = 0; i < atoms.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%g:%g", atoms[i].value, atoms[i].weight);
        if (i) out += ",";
        out += buf;
    }
    return out + "}";
}

}  // namespace erw
