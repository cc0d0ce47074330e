#pragma once

#include <string>

#include "erw/limit_law.hpp"
#include "erw/memory_spec.hpp"
#include "erw/multiplier.hpp"
#include "erw/params.hpp"
#include "erw/statistic.hpp"

namespace erw::analytic {

// A CLT statement: the law of the limit plus the statistic (centering and
// scaling) under which it holds — ready for the engine to apply.
struct CltRecipe {
    LimitLaw law;
    StatisticSpec stat;
    std::string descriptor;
};

// Law of the limit of S_n/n (T_n/n under a fixed start). Branch weights are
// the exact law of the first remembered steps, so conditioning and general r
// come out right automatically. Throws NoFormulaError off the catalog.
LimitLaw lln_limit_law(const MemorySpec& spec, const WalkParams& params);

// Law of the normalized statistic together with the recipe producing it.
// Options for skipfirst:k: the default limit variance is 1/(3-4p_k);
// `skipfirst_printed_variant` switches to the alternative printed form
// 1/(4-3p_k) (the two disagree; both are exposed, see the README note).
struct CltOptions {
    bool skipfirst_printed_variant = false;
};

CltRecipe clt_limit_law(const MemorySpec& spec, const WalkParams& params,
                        StatisticSpec::Centering mode, const CltOptions& options = {});

// The canonical centering mode for a model: random for memories containing
// early steps (whose branches drift apart), none otherwise.
StatisticSpec::Centering default_centering(const MemorySpec& spec);

// Law of R*Z for Z ~ base: atom locations scale by each multiplier value,
// Gaussian variances by its square. Applied to a +1-start CLT law this gives
// the general-step limit mixture.
LimitLaw scale_mixture(const LimitLaw& base, const StepMultiplier& mult);

// P(X_{k+1} = +1) for skipfirst:k under the full-rule warmup, computed by
// exact enumeration of the first k+1 steps.
double skipfirst_first_step_prob(const MemorySpec& spec, const WalkParams& params);

// Moments of the standard normal: m!/(2^{m/2} (m/2)!) for even m, 0 for odd.
double gaussian_moment(int m);

}  // namespace erw::analytic
