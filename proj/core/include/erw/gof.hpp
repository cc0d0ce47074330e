#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erw/limit_law.hpp"

namespace erw::stats {

struct GofReport {
    std::string test;
    double statistic = 0.0;
    std::optional<double> p_value;
    long sample_size = 0;
    std::string law;
    double alpha = 0.0;
    bool pass = false;
    std::string detail;
};

// Right-continuous CDF of a LimitLaw: atom weights at locations <= x plus the
// Gaussian components' normal CDFs. Monotone with limits 0 and 1.
double mixture_cdf(const analytic::LimitLaw& law, double x);

// Two-sided Kolmogorov-Smirnov distance between the sample's empirical CDF
// and the law. No sample-size floor: the bare statistic is also the oracle
// for hand-checked values.
double ks_statistic(std::span<const double> sample, const analytic::LimitLaw& law);

// KS test with the asymptotic Kolmogorov p-value. Requires an atom-free law
// (use atom_cluster_test for discrete limits) and at least 100 points; all
// law parameters are theoretical, so plain Kolmogorov critical values apply.
GofReport ks_test(std::span<const double> sample, const analytic::LimitLaw& law, double alpha);

struct AtomTestOptions {
    double epsilon = 0.05;            // classification half-window around each atom
    double max_unclassified = 0.01;   // tolerated fraction outside every window
};

// Classifies each point to the atom within epsilon (windows must not overlap)
// and chi-square-tests the classified counts against the atom weights. Fails
// when the unclassified fraction exceeds its bound.
GofReport atom_cluster_test(std::span<const double> sample, const analytic::LimitLaw& law,
                            const AtomTestOptions& options, double alpha);

// Picks epsilon so that classification is a >= 5 sigma event at horizon n:
// min(default, spacing/2 scaled down) given the per-branch spread sd/sqrt(n).
double suggest_atom_epsilon(const analytic::LimitLaw& law, double branch_sd, long n);

// |observed - predicted| <= max(abs_tol, rel_tol |predicted|), optionally
// widened by a 4 * standard-error band for Monte Carlo observations.
GofReport moment_check(double observed, double predicted, double rel_tol, double abs_tol,
                       std::optional<double> mc_standard_error = std::nullopt);

// Running-record series of the normalized path extremes over checkpoints; a
// diagnostic for almost-sure statements (never a verdict). centering(n, m1)
// receives the checkpoint index and the path's first-steps mean; scale(n)
// must be positive and finite at every checkpoint.
struct LilSeries {
    std::vector<long> checkpoints;
    std::vector<double> per_path_max;    // max over checkpoints, one per path
    std::vector<double> per_path_min;
    std::vector<double> running_max;     // cross-path envelope, one per checkpoint
    std::vector<double> running_min;
};

LilSeries lil_diagnostic(std::span<const long> checkpoint_ns,
                         std::span<const double> checkpoint_values,  // paths x checkpoints
                         std::span<const double> prefix_means,       // one per path (may be empty)
                         const std::function<double(long, double)>& centering,
                         const std::function<double(long)>& scale);

// sqrt(2 sigma2 n log log n), the almost-sure fluctuation scale; requires
// log log n > 0, i.e. n > e.
double lil_scale(long n, double sigma2);

// Cross-path spread of normalizer(n) * T_n at each checkpoint; stabilization
// (spread settling to a constant) is the diagnostic for almost-sure limits
// with nondegenerate targets.
struct StabilizationSeries {
    std::vector<long> checkpoints;
    std::vector<double> mean;
    std::vector<double> sd;
};

StabilizationSeries stabilization_diagnostic(std::span<const long> checkpoint_ns,
                                             std::span<const double> checkpoint_values,
                                             const std::function<double(long)>& normalizer);

}  // namespace erw::stats
