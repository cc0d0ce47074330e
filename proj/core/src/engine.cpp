#include "erw/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "erw/errors.hpp"
#include "erw/philox.hpp"
#include "erw/window_state.hpp"

namespace erw::engine {

namespace {

using Kind = MemorySpec::Kind;

constexpr double kTwo32 = 4294967296.0;
constexpr double kTwo31 = 2147483648.0;

inline std::uint64_t threshold_u32(double q) {
    if (q <= 0.0) return 0;
    if (q >= 1.0) return 1ull << 32;
    return static_cast<std::uint64_t>(std::llround(q * kTwo32));
}

struct PathSinks {
    std::int8_t* values = nullptr;          // length n when set
    std::span<const long> checkpoint_ns{};  // ascending, each <= n
    double* checkpoint_out = nullptr;
};

struct PathOut {
    long final_sum = 0;
    double prefix_mean = 0.0;
};

// Runs step(j, lane) for j in [j0, n) fetching whole Philox blocks; the lanes
// of a block stay in registers, which is what makes the steady loops fast.
template <class Step>
inline void for_each_lane(StepStream& rng, long j0, long n, Step&& step) {
    long j = j0;
    while (j < n && (j & 3)) {
        step(j, rng.lane(static_cast<std::uint64_t>(j)));
        ++j;
    }
    while (j + 4 <= n) {
        const auto blk = rng.block4(static_cast<std::uint64_t>(j) >> 2);
        step(j, blk[0]);
        step(j + 1, blk[1]);
        step(j + 2, blk[2]);
        step(j + 3, blk[3]);
        j += 4;
    }
    while (j < n) {
        step(j, rng.lane(static_cast<std::uint64_t>(j)));
        ++j;
    }
}

// Steady phase after the window has reached its final shape. Record is called
// as record(n_reached, step, sum); the uninstrumented runs pass a no-op that
// vanishes under inlining. Returns the final sum.
template <class Record>
long run_steady(const MemorySpec& spec, const WalkParams& params, long n, StepStream& rng,
                const WindowState& ws, Record record) {
    const double q2 = 2.0 * params.p - 1.0;
    long sum = ws.total_sum();

    switch (spec.kind()) {
        case Kind::Full: {
            const double c = 0.5 * q2 * kTwo32;
            // c/j leaves the sum-carried dependency chain
            for_each_lane(rng, ws.n(), n, [&](long j, std::uint32_t lane) {
                const double thr =
                    kTwo31 + (c / static_cast<double>(j)) * static_cast<double>(sum);
                const int step = static_cast<double>(lane) < thr ? 1 : -1;
                sum += step;
                record(j + 1, step, sum);
            });
            break;
        }
        case Kind::AllButFirstK: {
            const long k = spec.k();
            const long afix = ws.skip_prefix_sum();
            const double c = 0.5 * q2 * kTwo32;
            for_each_lane(rng, ws.n(), n, [&](long j, std::uint32_t lane) {
                const double thr = kTwo31 + (c / static_cast<double>(j - k)) *
                                               static_cast<double>(sum - afix);
                const int step = static_cast<double>(lane) < thr ? 1 : -1;
                sum += step;
                record(j + 1, step, sum);
            });
            break;
        }
        case Kind::FirstM: {
            const std::uint64_t thr = threshold_u32(
                kernel_prob_up<double>(params.p, ws.window_sum(), ws.window_count()));
            for_each_lane(rng, ws.n(), n, [&](long j, std::uint32_t lane) {
                const int step = static_cast<std::uint64_t>(lane) < thr ? 1 : -1;
                sum += step;
                record(j + 1, step, sum);
            });
            break;
        }
        case Kind::LastK:
        case Kind::FirstMLastK: {
            const long k = spec.k();
            const long m = spec.kind() == Kind::FirstMLastK ? spec.m() : 0;
            if (k == 1) {
                // only the previous step moves; arithmetic select keeps the
                // carried dependency chain to a handful of cycles
                const auto values = ws.window_values();
                const long base = ws.window_sum() - values.back();
                const std::uint64_t thr_neg =
                    threshold_u32(kernel_prob_up<double>(params.p, base - 1, m + 1));
                const std::uint64_t diff =
                    threshold_u32(kernel_prob_up<double>(params.p, base + 1, m + 1)) - thr_neg;
                std::uint64_t up = values.back() > 0 ? 1 : 0;
                for_each_lane(rng, ws.n(), n, [&](long j, std::uint32_t lane) {
                    const std::uint64_t thr = thr_neg + ((0 - up) & diff);
                    up = static_cast<std::uint64_t>(lane) < thr ? 1 : 0;
                    const int step = static_cast<int>(2 * up) - 1;
                    sum += step;
                    record(j + 1, step, sum);
                });
                break;
            }
            // ring of the last k steps, oldest first
            const auto values = ws.window_values();
            std::vector<std::int8_t> ring(static_cast<size_t>(k));
            long rsum = 0;
            for (long i = 0; i < k; ++i) {
                ring[static_cast<size_t>(i)] = values[values.size() - k + i];
                rsum += ring[static_cast<size_t>(i)];
            }
            const long base = ws.window_sum() - rsum;  // frozen first-m contribution
            std::vector<std::uint64_t> thr(static_cast<size_t>(2 * k + 1));
            for (long rs = -k; rs <= k; ++rs)
                thr[static_cast<size_t>(rs + k)] =
                    threshold_u32(kernel_prob_up<double>(params.p, base + rs, m + k));

            size_t pos = 0;
            std::int8_t* rp = ring.data();
            const std::uint64_t* tp = thr.data();
            for_each_lane(rng, ws.n(), n, [&](long j, std::uint32_t lane) {
                const int step = static_cast<std::uint64_t>(lane) < tp[rsum + k] ? 1 : -1;
                sum += step;
                rsum += step - rp[pos];
                rp[pos] = static_cast<std::int8_t>(step);
                if (++pos == static_cast<size_t>(k)) pos = 0;
                record(j + 1, step, sum);
            });
            break;
        }
    }
    return sum;
}

// One walk: forced prefix, exact WindowState warmup (which also covers the
// captured prefix steps), then the steady loop. Each random step consumes the
// 32-bit lane at its step index, so conditioning never shifts later draws.
PathOut run_path(const MemorySpec& spec, const WalkParams& params, long n, std::uint64_t seed,
                 std::uint64_t path, int prefix_capture, const PathSinks& sinks) {
    StepStream rng(seed, path, StepStream::kSteps);
    WindowState ws(spec);

    const int cap_target = std::max(prefix_capture, 1);
    long cap_sum = 0;
    int cap_cnt = 0;
    size_t cpi = 0;
    long next_cp = sinks.checkpoint_ns.empty() ? std::numeric_limits<long>::max()
                                               : sinks.checkpoint_ns[0];
    const auto record = [&](long nn, int step, long sum) {
        if (cap_cnt < cap_target) {
            cap_sum += step;
            ++cap_cnt;
        }
        if (sinks.values) sinks.values[nn - 1] = static_cast<std::int8_t>(step);
        if (nn == next_cp) {
            sinks.checkpoint_out[cpi++] = static_cast<double>(sum);
            next_cp = cpi < sinks.checkpoint_ns.size() ? sinks.checkpoint_ns[cpi]
                                                       : std::numeric_limits<long>::max();
        }
    };

    for (int s : params.start) {
        ws.push(s);
        record(ws.n(), s, ws.total_sum());
    }

    long steady_from = 1;
    switch (spec.kind()) {
        case Kind::Full: steady_from = 1; break;
        case Kind::AllButFirstK: steady_from = spec.k() + 1; break;
        case Kind::FirstM: steady_from = spec.m(); break;
        case Kind::LastK: steady_from = spec.k(); break;
        case Kind::FirstMLastK: steady_from = spec.m() + spec.k(); break;
    }
    const long warm_until = std::min<long>(n, std::max<long>(steady_from, cap_target));
    while (ws.n() < warm_until) {
        const long j = ws.n();
        const double q = j == 0 ? params.r : ws.prob_up<double>(params.p);
        const int step =
            static_cast<double>(rng.lane(static_cast<std::uint64_t>(j))) < q * kTwo32 ? 1 : -1;
        ws.push(step);
        record(ws.n(), step, ws.total_sum());
    }

    PathOut out;
    if (ws.n() >= n) {
        out.final_sum = ws.total_sum();
    } else if (sinks.values == nullptr && next_cp == std::numeric_limits<long>::max()) {
        out.final_sum = run_steady(spec, params, n, rng, ws, [](long, int, long) {});
    } else {
        out.final_sum = run_steady(spec, params, n, rng, ws, record);
    }
    out.prefix_mean = cap_cnt > 0 ? static_cast<double>(cap_sum) / cap_cnt : 0.0;
    return out;
}

void validate_run(const MemorySpec& spec, const WalkParams& params, long n) {
    require_valid(params, spec);
    if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");
    if (static_cast<long>(params.start.size()) > n)
        throw std::invalid_argument("simulate: start prefix longer than n");
}

std::vector<long> checkpoint_schedule(const EnsembleOptions& options, long n) {
    if (options.record != RecordMode::checkpoints) return {};
    std::vector<long> cps = options.checkpoints.empty() ? default_checkpoints(n)
                                                        : options.checkpoints;
    long prev = 0;
    for (long c : cps) {
        if (c <= prev || c > n)
            throw std::invalid_argument("checkpoints must be ascending and within [1, n]");
        prev = c;
    }
    return cps;
}

}  // namespace

std::vector<long> default_checkpoints(long n) {
    std::vector<long> cps;
    for (long c = 1; c < n && c > 0; c *= 2) cps.push_back(c);
    if (cps.empty() || cps.back() != n) cps.push_back(n);
    return cps;
}

Trajectory simulate_path(const MemorySpec& spec, const WalkParams& params, long n,
                         std::uint64_t seed, std::uint64_t path_index, RecordMode record,
                         std::span<const long> checkpoints) {
    validate_run(spec, params, n);
    Trajectory t;
    t.spec = spec;
    t.params = params;
    t.n = n;
    std::vector<long> cps;
    if (record == RecordMode::checkpoints)
        cps = checkpoints.empty() ? default_checkpoints(n)
                                  : std::vector<long>(checkpoints.begin(), checkpoints.end());
    if (record == RecordMode::full) t.values.resize(static_cast<size_t>(n));
    t.checkpoint_ns = cps;
    t.checkpoint_sums.resize(cps.size());

    PathSinks sinks;
    if (record == RecordMode::full) sinks.values = t.values.data();
    sinks.checkpoint_ns = t.checkpoint_ns;
    sinks.checkpoint_out = t.checkpoint_sums.data();
    const auto out = run_path(spec, params, n, seed, path_index, 2, sinks);
    t.final_sum = out.final_sum;
    t.prefix_mean = out.prefix_mean;
    return t;
}

int resolve_worker_count(int requested, long paths) {
    long w = requested;
    if (w <= 0) {
        if (const char* env = std::getenv("ERW_THREADS")) w = std::atol(env);
        if (w <= 0) w = static_cast<long>(std::thread::hardware_concurrency());
        if (w <= 0) w = 1;
    }
    return static_cast<int>(std::clamp<long>(w, 1, std::max<long>(paths, 1)));
}

EnsemblePMF simulate_ensemble(const MemorySpec& spec, const WalkParams& params, long n,
                              long paths, std::uint64_t seed, const StatisticSpec& stat,
                              const EnsembleOptions& options) {
    validate_run(spec, params, n);
    if (paths < 1) throw std::invalid_argument("simulate_ensemble: paths must be >= 1");
    if (stat.kind == StatisticSpec::Kind::clt &&
        stat.centering == StatisticSpec::Centering::random && stat.prefix_len < 1)
        throw std::invalid_argument("random centering requires prefix_len >= 1");
    if (stat.kind == StatisticSpec::Kind::clt &&
        stat.scale == StatisticSpec::Scale::sqrt_n_log_n && n < 2)
        throw std::invalid_argument("sqrt(n log n) scaling needs n >= 2");
    if (options.record == RecordMode::full && n * paths > kFullRecordCap)
        throw CapabilityError(
            "full step recording refused: n*paths exceeds 1e9 values; record "
            "checkpoints instead");

    EnsemblePMF ens;
    ens.meta = {spec, params, n, paths, seed, stat, std::nullopt, 0};
    ens.checkpoint_ns = checkpoint_schedule(options, n);
    const size_t cp = ens.checkpoint_ns.size();
    ens.sample.resize(static_cast<size_t>(paths));
    ens.checkpoint_values.resize(static_cast<size_t>(paths) * cp);
    const bool keep_prefix = stat.centering == StatisticSpec::Centering::random ||
                             options.record == RecordMode::checkpoints;
    if (keep_prefix) ens.prefix_means.resize(static_cast<size_t>(paths));
    if (options.record == RecordMode::full)
        ens.path_values.resize(static_cast<size_t>(paths) * static_cast<size_t>(n));

    const int capture = std::max(stat.prefix_len, 1);
    const int workers = resolve_worker_count(options.workers, paths);

    const auto run_block = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            PathSinks sinks;
            sinks.checkpoint_ns = ens.checkpoint_ns;
            sinks.checkpoint_out = ens.checkpoint_values.data() + static_cast<size_t>(i) * cp;
            if (!ens.path_values.empty())
                sinks.values =
                    ens.path_values.data() + static_cast<size_t>(i) * static_cast<size_t>(n);
            const auto out = run_path(spec, params, n, seed, static_cast<std::uint64_t>(i),
                                      capture, sinks);
            ens.sample[static_cast<size_t>(i)] =
                stat.apply(static_cast<double>(out.final_sum), n, out.prefix_mean);
            if (keep_prefix) ens.prefix_means[static_cast<size_t>(i)] = out.prefix_mean;
        }
    };

    if (workers == 1) {
        run_block(0, paths);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        const long chunk = (paths + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const long lo = w * chunk;
            const long hi = std::min<long>(paths, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(run_block, lo, hi);
        }
        for (auto& th : pool) th.join();
    }
    return ens;
}

EnsemblePMF apply_multiplier(const EnsemblePMF& ensemble, const StepMultiplier& mult,
                             std::uint64_t seed) {
    mult.require_valid();
    const auto& meta = ensemble.meta;
    if (meta.params.start != std::vector<int>{+1})
        throw std::invalid_argument(
            "apply_multiplier: the base ensemble must fix the start at +1 (the "
            "general-step walk is R times the +1-start walk)");
    if (meta.stat.kind == StatisticSpec::Kind::clt &&
        meta.stat.centering != StatisticSpec::Centering::none)
        throw std::invalid_argument(
            "apply_multiplier: centered statistics do not scale by R; use an "
            "uncentered statistic");
    if (meta.multiplier)
        throw std::invalid_argument("apply_multiplier: ensemble already carries a multiplier");

    std::vector<double> cumulative;
    cumulative.reserve(mult.atoms.size());
    double acc = 0.0;
    for (const auto& a : mult.atoms) {
        acc += a.weight;
        cumulative.push_back(acc);
    }

    EnsemblePMF out = ensemble;
    out.meta.multiplier = mult;
    out.meta.multiplier_seed = seed;
    const size_t cp = out.checkpoint_ns.size();
    for (size_t i = 0; i < out.sample.size(); ++i) {
        StepStream rng(seed, static_cast<std::uint64_t>(i), StepStream::kMultiplier);
        const double u = rng.uniform64(0);
        size_t pick = 0;
        while (pick + 1 < cumulative.size() && u >= cumulative[pick]) ++pick;
        const double r = mult.atoms[pick].value;
        out.sample[i] *= r;
        for (size_t j = 0; j < cp; ++j) out.checkpoint_values[i * cp + j] *= r;
    }
    return out;
}

EnsembleSummary EnsemblePMF::summary() const {
    EnsembleSummary s;
    if (sample.empty()) return s;
    double mean = 0.0;
    s.min = std::numeric_limits<double>::infinity();
    s.max = -std::numeric_limits<double>::infinity();
    for (double v : sample) {
        mean += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    mean /= static_cast<double>(sample.size());
    double var = 0.0;
    for (double v : sample) var += (v - mean) * (v - mean);
    s.mean = mean;
    s.variance = sample.size() > 1 ? var / static_cast<double>(sample.size() - 1) : 0.0;
    return s;
}

}  // namespace erw::engine
