#include "erw/enumerate.hpp"

namespace erw::oracle {

ExactPMF enumerate(const MemorySpec& spec, const WalkParams& params, long n) {
    require_valid(params, spec);
    return enumerate_t<double>(spec, params.p, params.r, params.start, n);
}

double enumerate_expectation(const MemorySpec& spec, const WalkParams& params, long n,
                             const std::function<double(std::span<const std::int8_t>)>& f) {
    require_valid(params, spec);
    double acc = 0.0;
    std::vector<std::int8_t> path;
    detail::enumerate_walk<double>(
        spec, params.p, params.r, params.start, n, path,
        [&](const WindowState&, double w, const std::vector<std::int8_t>& steps) {
            acc += w * f(std::span<const std::int8_t>(steps.data(), steps.size()));
        });
    return acc;
}

}  // namespace erw::oracle
