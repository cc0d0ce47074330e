#pragma once

#include <cstdint>
#include <vector>

#include "erw/memory_spec.hpp"
#include "erw/params.hpp"

namespace erw {

// The single transition rule shared by every model: the next step copies a
// uniformly chosen remembered step with probability p and its negation
// otherwise, so
//
//   P(X_{n+1} = +1 | memory) = p * (#+1 in window)/|window|
//                            + (1-p) * (#-1 in window)/|window|
//                            = (1 + (2p-1) * window_mean) / 2.
//
// Generic over the scalar so the exact-rational oracle tier can reuse it.
template <class Real>
inline Real kernel_prob_up(const Real& p, long window_sum, long window_count) {
    // p*(count+sum)/2 + (1-p)*(count-sum)/2, all over count
    const Real up = p * Real(window_count + window_sum) +
                    (Real(1) - p) * Real(window_count - window_sum);
    return up / Real(2 * window_count);
}

// Kernel-facing view of the walk history after n steps: the values at the
// remembered indices. Full memory stores only the running sum (sufficient:
// the kernel depends on the window through its mean alone).
struct History {
    long n = 0;
    std::vector<std::int8_t> window;  // values at resolve(n), ascending index order
    long window_sum = 0;              // used by the sum-only form
    long window_count = 0;
    bool sum_only = false;

    static History from_window(long n, std::vector<std::int8_t> window) {
        History h;
        h.n = n;
        h.window = std::move(window);
        return h;
    }
    // Sufficient form for unbounded windows (Full, AllButFirstK): the mean of
    // the remembered steps is all the kernel needs.
    static History from_sum(long n, long sum, long count) {
        History h;
        h.n = n;
        h.window_sum = sum;
        h.window_count = count;
        h.sum_only = true;
        return h;
    }
};

// P(X_{n+1} = +1 | history). Throws std::invalid_argument when the history is
// inconsistent with the spec (window size != |resolve(n)|, or a sum-only
// history for a bounded-window spec).
double prob_up(const MemorySpec& spec, const WalkParams& params, const History& history);

}  // namespace erw
