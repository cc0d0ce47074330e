#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "erw/errors.hpp"
#include "erw/exact_pmf.hpp"
#include "erw/params.hpp"
#include "erw/window_state.hpp"

namespace erw::oracle {

inline constexpr long kEnumerateMaxSteps = 24;

namespace detail {

template <class Real, class Leaf>
void enumerate_walk(const MemorySpec& spec, const Real& p, const Real& r,
                    const std::vector<int>& start, long n, std::vector<std::int8_t>& path,
                    const Leaf& leaf) {
    if (n < 1) throw std::invalid_argument("enumerate: n must be >= 1");
    if (static_cast<long>(start.size()) > n)
        throw std::invalid_argument("enumerate: start prefix longer than n");
    if (n > kEnumerateMaxSteps)
        throw CapabilityError("enumerate supports n <= " + std::to_string(kEnumerateMaxSteps) +
                              " (2^n paths); use dp or moments instead");

    WindowState init(spec);
    path.assign(static_cast<size_t>(n), 0);
    for (int s : start) {
        path[static_cast<size_t>(init.n())] = static_cast<std::int8_t>(s);
        init.push(s);
    }

    // Depth-first over the unforced suffix; the path weight is the product of
    // kernel probabilities (the first unforced step uses r).
    const std::function<void(const WindowState&, const Real&)> descend =
        [&](const WindowState& state, const Real& weight) {
            if (state.n() == n) {
                leaf(state, weight, path);
                return;
            }
            const Real q = state.n() == 0 ? r : state.template prob_up<Real>(p);
            {
                WindowState up = state;
                up.push(+1);
                path[static_cast<size_t>(state.n())] = 1;
                descend(up, weight * q);
            }
            {
                WindowState down = state;
                down.push(-1);
                path[static_cast<size_t>(state.n())] = -1;
                descend(down, weight * (Real(1) - q));
            }
        };
    descend(init, Real(1));
}

}  // namespace detail

// Exact law of T_n by summing path probabilities over every +-1 sequence
// consistent with the start conditioning (fixed prefix, or random first step
// with success probability r). Independent of the dp and moment routes.
template <class Real>
BasicExactPMF<Real> enumerate_t(const MemorySpec& spec, const Real& p, const Real& r,
                                const std::vector<int>& start, long n) {
    BasicExactPMF<Real> pmf;
    pmf.n = n;
    pmf.support.resize(static_cast<size_t>(n) + 1);
    for (long i = 0; i <= n; ++i) pmf.support[static_cast<size_t>(i)] = -n + 2 * i;
    pmf.probs.assign(static_cast<size_t>(n) + 1, Real(0));
    std::vector<std::int8_t> path;
    detail::enumerate_walk<Real>(
        spec, p, r, start, n, path,
        [&](const WindowState& state, const Real& w, const std::vector<std::int8_t>&) {
            pmf.probs[static_cast<size_t>((state.total_sum() + n) / 2)] += w;
        });
    return pmf;
}

ExactPMF enumerate(const MemorySpec& spec, const WalkParams& params, long n);

// E f(X_1..X_n) for an arbitrary path functional; used for quantities that a
// moment table does not carry directly (pairwise step correlations, the
// first-step law of a skipfirst walk, ...).
double enumerate_expectation(const MemorySpec& spec, const WalkParams& params, long n,
                             const std::function<double(std::span<const std::int8_t>)>& f);

}  // namespace erw::oracle
