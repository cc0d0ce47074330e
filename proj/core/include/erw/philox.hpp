#pragma once

#include <array>
#include <cstdint>

namespace erw {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011). Streams are
// pure functions of (key, counter), so any (seed, path, step) cell can be
// addressed at random: ensembles are reproducible bit-for-bit regardless of
// worker count or scheduling, and forced prefix steps simply skip their cells.
struct Philox4x32 {
    static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
    static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
    static constexpr std::uint32_t kMulA = 0xD2511F53u;
    static constexpr std::uint32_t kMulB = 0xCD9E8D57u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMulA) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMulB) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeylA;
            key[1] += kWeylB;
        }
        return ctr;
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// One lane of uniform bits per walk step: lane(step) is the (step & 3)-th
// word of the Philox block at counter (path, step >> 2). Sequential access
// reuses the cached block, so a step costs a quarter of a Philox call.
class StepStream {
public:
    // Distinct domains give independent streams for the same (seed, path).
    enum Domain : std::uint64_t { kSteps = 0, kMultiplier = 1 };

    StepStream(std::uint64_t seed, std::uint64_t path, std::uint64_t domain = kSteps)
        : path_lo_(static_cast<std::uint32_t>(path)),
          path_hi_(static_cast<std::uint32_t>(path >> 32)) {
        const std::uint64_t k = splitmix64(seed ^ splitmix64(domain));
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    }

    std::uint32_t lane(std::uint64_t step) {
        const std::uint64_t blk = step >> 2;
        if (blk != cached_block_ || !have_block_) {
            block_ = block4(blk);
            cached_block_ = blk;
            have_block_ = true;
        }
        return block_[step & 3];
    }

    // The four lanes of one counter block; hot loops fetch these directly and
    // keep them in registers.
    std::array<std::uint32_t, 4> block4(std::uint64_t blk) const {
        return Philox4x32::block({path_lo_, path_hi_, static_cast<std::uint32_t>(blk),
                                  static_cast<std::uint32_t>(blk >> 32)},
                                 key_);
    }

    // Uniform double in [0,1) from two consecutive lanes.
    double uniform64(std::uint64_t index) {
        const std::uint64_t hi = lane(2 * index);
        const std::uint64_t lo = lane(2 * index + 1);
        return static_cast<double>(((hi << 32) | lo) >> 11) * 0x1.0p-53;
    }

private:
    std::uint32_t path_lo_, path_hi_;
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> block_{};
    std::uint64_t cached_block_ = 0;
    bool have_block_ = false;
};

}  // namespace erw
