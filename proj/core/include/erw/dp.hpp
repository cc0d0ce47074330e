#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "erw/errors.hpp"
#include "erw/exact_pmf.hpp"
#include "erw/kernel.hpp"
#include "erw/params.hpp"
#include "erw/window_state.hpp"

namespace erw::oracle {

namespace detail {
inline constexpr int kNewStep = -1;  // marker in MemorySpec::transition_sources
}  // namespace detail

// Exact law of T_n by forward dynamic programming over (position offset,
// window state); O(n^2 * 2^w) time for window size w. Requires a bounded
// window (FirstM, LastK, FirstMLastK).
template <class Real>
BasicExactPMF<Real> dp_distribution_t(const MemorySpec& spec, const Real& p, const Real& r,
                                      const std::vector<int>& start, long n) {
    if (n < 1) throw std::invalid_argument("dp_distribution: n must be >= 1");
    if (static_cast<long>(start.size()) > n)
        throw std::invalid_argument("dp_distribution: start prefix longer than n");
    if (!spec.bounded_window())
        throw CapabilityError("dp_distribution requires a bounded memory window; '" +
                              spec.name() + "' is unsupported (use enumerate or moments)");
    const int wcap = spec.window_capacity();
    if (wcap > 16 || (static_cast<unsigned long>(n) + 1) * (1ul << wcap) > (1ul << 24))
        throw CapabilityError("dp_distribution state space too large (n=" + std::to_string(n) +
                              ", window=" + std::to_string(wcap) + ")");

    // layer[tidx * masks + mask], tidx = (T + j) / 2
    const auto layer_index = [](long tidx, unsigned mask, unsigned masks) {
        return static_cast<size_t>(tidx) * masks + mask;
    };

    // Seed the DP at the end of the forced prefix (or at step one, split
    // between +1 and -1 with weights r and 1-r).
    long j0 = static_cast<long>(start.size());
    std::vector<Real> cur;
    if (j0 == 0) {
        j0 = 1;
        const unsigned masks = 1u << spec.window_size(1);
        cur.assign(2 * masks, Real(0));
        cur[layer_index(1, 1u, masks)] += r;             // X_1 = +1, T = +1
        cur[layer_index(0, 0u, masks)] += Real(1) - r;   // X_1 = -1, T = -1
    } else {
        WindowState ws(spec);
        for (int s : start) ws.push(s);
        const auto values = ws.window_values();
        unsigned mask = 0;
        for (size_t i = 0; i < values.size(); ++i)
            if (values[i] > 0) mask |= 1u << i;
        const unsigned masks = 1u << values.size();
        cur.assign(static_cast<size_t>(j0 + 1) * masks, Real(0));
        cur[layer_index((ws.total_sum() + j0) / 2, mask, masks)] = Real(1);
    }

    for (long j = j0; j < n; ++j) {
        const long w = spec.window_size(j);
        const long w1 = spec.window_size(j + 1);
        const unsigned masks = 1u << w;
        const unsigned masks1 = 1u << w1;
        const auto src = spec.transition_sources(j);

        // Per-step kernel probability depends on the mask only through its
        // popcount; the projected next-window masks depend on the mask alone.
        std::vector<Real> q_up(static_cast<size_t>(w) + 1);
        for (long c = 0; c <= w; ++c) q_up[static_cast<size_t>(c)] = kernel_prob_up<Real>(p, 2 * c - w, w);
        std::vector<unsigned> next_up(masks), next_down(masks);
        for (unsigned mask = 0; mask < masks; ++mask) {
            unsigned up = 0, down = 0;
            for (size_t b = 0; b < src.size(); ++b) {
                if (src[b] == detail::kNewStep)
                    up |= 1u << b;  // new step bit set iff the step is +1
                else if (mask >> src[b] & 1u) {
                    up |= 1u << b;
                    down |= 1u << b;
                }
            }
            next_up[mask] = up;
            next_down[mask] = down;
        }

        std::vector<Real> next(static_cast<size_t>(j + 2) * masks1, Real(0));
        for (long tidx = 0; tidx <= j; ++tidx) {
            for (unsigned mask = 0; mask < masks; ++mask) {
                const Real& w0 = cur[layer_index(tidx, mask, masks)];
                if (w0 == Real(0)) continue;
                const Real& q = q_up[static_cast<size_t>(std::popcount(mask))];
                next[layer_index(tidx + 1, next_up[mask], masks1)] += w0 * q;
                next[layer_index(tidx, next_down[mask], masks1)] += w0 * (Real(1) - q);
            }
        }
        cur.swap(next);
    }

    BasicExactPMF<Real> pmf;
    pmf.n = n;
    pmf.support.resize(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) pmf.support[static_cast<size_t>(i)] = -n + 2 * i;
    pmf.probs.assign(static_cast<size_t>(n) + 1, Real(0));
    const unsigned masks = 1u << spec.window_size(n);
    for (long tidx = 0; tidx <= n; ++tidx)
        for (unsigned mask = 0; mask < masks; ++mask)
            pmf.probs[static_cast<size_t>(tidx)] += cur[layer_index(tidx, mask, masks)];
    return pmf;
}

ExactPMF dp_distribution(const MemorySpec& spec, const WalkParams& params, long n);

}  // namespace erw::oracle
