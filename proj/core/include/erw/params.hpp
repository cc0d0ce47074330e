#pragma once

#include <string>
#include <vector>

#include "erw/memory_spec.hpp"

namespace erw {

// Walk parameters. p is the probability of copying (rather than negating) a
// remembered step; r the probability that the first step is +1. An optional
// fixed prefix of +-1 steps (length 0, 1 or 2) pins the start of the walk:
// with a prefix the partial sums are conditioned on those steps, without one
// the first step is random with success probability r.
struct WalkParams {
    double p = 0.5;
    double r = 0.5;
    std::vector<int> start;  // entries are exactly +1 or -1

    bool fixed_start() const { return !start.empty(); }
    int start_sum() const {
        int s = 0;
        for (int v : start) s += v;
        return s;
    }
    WalkParams with_start(std::vector<int> s) const {
        WalkParams q = *this;
        q.start = std::move(s);
        return q;
    }
    WalkParams mirrored() const {  // r -> 1-r, prefix negated
        WalkParams q = *this;
        q.r = 1.0 - q.r;
        for (int& v : q.start) v = -v;
        return q;
    }
};

struct ValidationReport {
    std::vector<std::string> errors;
    bool ok() const { return errors.empty(); }
    std::string message() const;
};

// Checks the type invariants: p, r in [0,1], start entries +-1, prefix length
// at most 2. Strict mode additionally requires 0 < p < 1 (p = 1 freezes the
// walk onto the first step, p = 0 alternates it, so both are excluded from
// the limit theory; they remain usable as deterministic corner cases in
// non-strict mode).
ValidationReport validate(const WalkParams& params, const MemorySpec& spec, bool strict = false);

// Throws std::invalid_argument with the joined report when validation fails.
void require_valid(const WalkParams& params, const MemorySpec& spec, bool strict = false);

}  // namespace erw
