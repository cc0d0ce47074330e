#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "erw/kernel.hpp"
#include "erw/memory_spec.hpp"

namespace erw {

// Exact sufficient state of the memory window while stepping a walk forward.
// Keeps O(m+k) storage for bounded windows and running sums otherwise; every
// oracle and the simulation warmup share this bookkeeping so the kernel sees
// one definition of "the window".
class WindowState {
public:
    explicit WindowState(const MemorySpec& spec)
        : spec_(spec),
          ring_(spec.kind() == MemorySpec::Kind::LastK ||
                        spec.kind() == MemorySpec::Kind::FirstMLastK
                    ? spec.k()
                    : 0,
                0) {}

    long n() const { return n_; }
    long total_sum() const { return sum_all_; }
    // Sum of the first k steps for AllButFirstK (frozen once n reaches k).
    long skip_prefix_sum() const { return first_sum_; }

    void push(int step) {
        using Kind = MemorySpec::Kind;
        ++n_;
        sum_all_ += step;
        switch (spec_.kind()) {
            case Kind::Full:
                break;
            case Kind::FirstM:
            case Kind::FirstMLastK:
                if (static_cast<long>(first_.size()) < spec_.m()) {
                    first_.push_back(static_cast<std::int8_t>(step));
                    first_sum_ += step;
                }
                break;
            case Kind::AllButFirstK:
                if (n_ <= spec_.k()) first_sum_ += step;
                break;
            case Kind::LastK:
                break;
        }
        if (!ring_.empty()) {
            const long pos = (n_ - 1) % static_cast<long>(ring_.size());
            if (n_ > static_cast<long>(ring_.size())) ring_sum_ -= ring_[pos];
            ring_[pos] = static_cast<std::int8_t>(step);
            ring_sum_ += step;
        }
    }

    long window_count() const { return spec_.window_size(n_); }

    long window_sum() const {
        using Kind = MemorySpec::Kind;
        switch (spec_.kind()) {
            case Kind::Full: return sum_all_;
            case Kind::FirstM: return first_sum_;
            case Kind::LastK: return ring_sum_;
            case Kind::AllButFirstK:
                return n_ > spec_.k() ? sum_all_ - first_sum_ : sum_all_;
            case Kind::FirstMLastK: {
                // union of {1..f} and {lo..n}; subtract the overlap once
                const long f = std::min<long>(spec_.m(), n_);
                const long lo = std::max<long>(1, n_ - spec_.k() + 1);
                long overlap = 0;
                for (long i = std::max<long>(lo, 1); i <= f; ++i) overlap += first_[i - 1];
                return first_sum_ + ring_sum_ - overlap;
            }
        }
        return 0;
    }

    // Values at resolve(n) in ascending index order (bounded windows only).
    std::vector<std::int8_t> window_values() const {
        using Kind = MemorySpec::Kind;
        if (!spec_.bounded_window())
            throw std::logic_error("window_values: unbounded memory spec");
        std::vector<std::int8_t> out;
        const long f = spec_.kind() == Kind::LastK ? 0 : std::min<long>(spec_.m(), n_);
        for (long i = 1; i <= f; ++i) out.push_back(first_[i - 1]);
        if (spec_.kind() != Kind::FirstM) {
            const long k = spec_.k();
            const long lo = std::max<long>(1, n_ - k + 1);
            for (long i = std::max(lo, f + 1); i <= n_; ++i)
                out.push_back(ring_[(i - 1) % static_cast<long>(ring_.size())]);
        }
        return out;
    }

    History history() const {
        if (spec_.bounded_window()) return History::from_window(n_, window_values());
        return History::from_sum(n_, window_sum(), window_count());
    }

    template <class Real>
    Real prob_up(const Real& p) const {
        return kernel_prob_up<Real>(p, window_sum(), window_count());
    }

private:
    MemorySpec spec_;
    long n_ = 0;
    long sum_all_ = 0;
    long first_sum_ = 0;
    long ring_sum_ = 0;
    std::vector<std::int8_t> first_;
    std::vector<std::int8_t> ring_;
};

}  // namespace erw
