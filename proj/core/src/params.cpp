#include "erw/params.hpp"

#include <stdexcept>

namespace erw {

std::string ValidationReport::message() const {
    std::string out;
    for (const auto& e : errors) {
        if (!out.empty()) out += "; ";
        out += e;
    }
    return out;
}

ValidationReport validate(const WalkParams& params, const MemorySpec& spec, bool strict) {
    ValidationReport rep;
    if (!(params.p >= 0.0 && params.p <= 1.0))
        rep.errors.push_back("p out of range [0,1]: " + std::to_string(params.p));
    if (!(params.r >= 0.0 && params.r <= 1.0))
        rep.errors.push_back("r out of range [0,1]: " + std::to_string(params.r));
    if (strict && !(params.p > 0.0 && params.p < 1.0))
        rep.errors.push_back(
            "strict mode requires 0 < p < 1 (p=1 repeats the first remembered step "
            "forever, p=0 alternates it; both boundaries are excluded)");
    if (params.start.size() > 2)
        rep.errors.push_back("start prefix longer than 2 steps");
    for (int v : params.start)
        if (v != 1 && v != -1)
            rep.errors.push_back("start entries must be +1 or -1, got " + std::to_string(v));
    (void)spec;  // spec shape constraints are enforced by MemorySpec constructors
    return rep;
}

void require_valid(const WalkParams& params, const MemorySpec& spec, bool strict) {
    const auto rep = validate(params, spec, strict);
    if (!rep.ok()) throw std::invalid_argument("invalid walk parameters: " + rep.message());
}

}  // namespace erw
