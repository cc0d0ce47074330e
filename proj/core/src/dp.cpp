#include "erw/dp.hpp"

namespace erw::oracle {

ExactPMF dp_distribution(const MemorySpec& spec, const WalkParams& params, long n) {
    require_valid(params, spec);
    return dp_distribution_t<double>(spec, params.p, params.r, params.start, n);
}

}  // namespace erw::oracle
