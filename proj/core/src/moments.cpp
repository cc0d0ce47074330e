#include "erw/moments.hpp"

namespace erw::oracle {

MomentTable exact_moments(const MemorySpec& spec, const WalkParams& params, long n,
                          int max_power) {
    require_valid(params, spec);
    return exact_moments_t<double>(spec, params.p, params.r, params.start, n, max_power);
}

}  // namespace erw::oracle
