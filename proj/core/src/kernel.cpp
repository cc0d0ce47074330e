#include "erw/kernel.hpp"

#include <cstdlib>
#include <stdexcept>

namespace erw {

double prob_up(const MemorySpec& spec, const WalkParams& params, const History& history) {
    if (history.n < 1) throw std::invalid_argument("prob_up: history has no steps");
    long sum = 0;
    long count = 0;
    const long expect = spec.window_size(history.n);
    if (history.sum_only) {
        if (history.window_count != expect)
            throw std::invalid_argument("prob_up: window count " +
                                        std::to_string(history.window_count) +
                                        " does not match |resolve(n)| = " +
                                        std::to_string(expect));
        if (std::labs(history.window_sum) > history.window_count ||
            ((history.window_sum ^ history.window_count) & 1L) != 0)
            throw std::invalid_argument("prob_up: window sum violates parity/bound");
        sum = history.window_sum;
        count = history.window_count;
    } else {
        if (static_cast<long>(history.window.size()) != expect)
            throw std::invalid_argument("prob_up: window size " +
                                        std::to_string(history.window.size()) +
                                        " does not match |resolve(n)| = " +
                                        std::to_string(expect));
        for (auto v : history.window) {
            if (v != 1 && v != -1)
                throw std::invalid_argument("prob_up: window values must be +1 or -1");
            sum += v;
        }
        count = expect;
    }
    return kernel_prob_up<double>(params.p, sum, count);
}

}  // namespace erw
