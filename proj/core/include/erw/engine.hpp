#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "erw/memory_spec.hpp"
#include "erw/multiplier.hpp"
#include "erw/params.hpp"
#include "erw/statistic.hpp"

namespace erw::engine {

enum class RecordMode { none, checkpoints, full };

struct Trajectory {
    MemorySpec spec = MemorySpec::full();
    WalkParams params;
    long n = 0;
    long final_sum = 0;
    double prefix_mean = 0.0;            // mean of the first captured steps
    std::vector<std::int8_t> values;     // full record mode
    std::vector<long> checkpoint_ns;
    std::vector<double> checkpoint_sums;
};

// Geometric checkpoint schedule: powers of two up to n, plus n itself.
std::vector<long> default_checkpoints(long n);

// One walk driven by the counter-based stream (seed, path_index). Identical
// arguments give identical trajectories; forced prefix steps consume no
// randomness but keep their stream positions, so conditioning does not shift
// later draws.
Trajectory simulate_path(const MemorySpec& spec, const WalkParams& params, long n,
                         std::uint64_t seed, std::uint64_t path_index = 0,
                         RecordMode record = RecordMode::none,
                         std::span<const long> checkpoints = {});

struct EnsembleMeta {
    MemorySpec spec = MemorySpec::full();
    WalkParams params;
    long n = 0;
    long paths = 0;
    std::uint64_t seed = 0;
    StatisticSpec stat;
    std::optional<StepMultiplier> multiplier;
    std::uint64_t multiplier_seed = 0;
};

struct EnsembleSummary {
    double mean = 0.0;
    double variance = 0.0;
    double min = 0.0;
    double max = 0.0;
};

// Monte Carlo ensemble: one statistic value per path, plus optional
// checkpointed partial sums. Path i always uses the stream (seed, i), so the
// sample is bit-identical for every worker count.
struct EnsemblePMF {
    EnsembleMeta meta;
    std::vector<double> sample;
    std::vector<long> checkpoint_ns;
    std::vector<double> checkpoint_values;  // paths x checkpoints, row-major
    std::vector<double> prefix_means;       // per path, when centering needs them
    std::vector<std::int8_t> path_values;   // paths x n, full record mode only

    EnsembleSummary summary() const;
};

struct EnsembleOptions {
    RecordMode record = RecordMode::none;
    std::vector<long> checkpoints;  // empty -> default schedule when recording
    int workers = 0;                // 0 -> ERW_THREADS env or hardware concurrency
};

// Full step recording is refused above this many values; checkpoint recording
// is the intended tool at that scale.
inline constexpr long kFullRecordCap = 1'000'000'000;

EnsemblePMF simulate_ensemble(const MemorySpec& spec, const WalkParams& params, long n,
                              long paths, std::uint64_t seed, const StatisticSpec& stat,
                              const EnsembleOptions& options = {});

// Scales every path statistic (and checkpoints) by an independent multiplier
// draw. The base ensemble must be the +1-start walk with an uncentered
// statistic, matching the X_n = R * X~_n construction.
EnsemblePMF apply_multiplier(const EnsemblePMF& ensemble, const StepMultiplier& mult,
                             std::uint64_t seed);

int resolve_worker_count(int requested, long paths);

}  // namespace erw::engine
