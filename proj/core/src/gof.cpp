#include "erw/gof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "erw/special.hpp"

namespace erw::stats {

double mixture_cdf(const analytic::LimitLaw& law, double x) {
    double f = 0.0;
    for (const auto& a : law.atoms)
        if (a.location <= x) f += a.weight;
    for (const auto& g : law.gaussians)
        f += g.weight * normal_cdf((x - g.mean) / std::sqrt(g.variance));
    return f;
}

double ks_statistic(std::span<const double> sample, const analytic::LimitLaw& law) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (size_t i = 0; i < sorted.size(); ++i) {
        const double f = mixture_cdf(law, sorted[i]);
        d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

GofReport ks_test(std::span<const double> sample, const analytic::LimitLaw& law, double alpha) {
    law.require_valid();
    if (law.has_atoms())
        throw std::invalid_argument(
            "ks_test: law has point atoms; the KS distribution assumes a continuous "
            "null, use atom_cluster_test for discrete limits");
    if (sample.size() < 100)
        throw std::invalid_argument("ks_test: need at least 100 sample points");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ks_test: alpha must be in (0,1)");
    GofReport rep;
    rep.test = "ks";
    rep.sample_size = static_cast<long>(sample.size());
    rep.law = law.describe();
    rep.alpha = alpha;
    rep.statistic = ks_statistic(sample, law);
    rep.p_value = kolmogorov_sf(std::sqrt(static_cast<double>(sample.size())) * rep.statistic);
    rep.pass = *rep.p_value >= alpha;
    char buf[128];
    std::snprintf(buf, sizeof buf, "D=%.6g, p=%.6g, alpha=%g", rep.statistic, *rep.p_value,
                  alpha);
    rep.detail = buf;
    return rep;
}

double suggest_atom_epsilon(const analytic::LimitLaw& law, double branch_sd, long n) {
    // want eps >= 5 * branch_sd / sqrt(n) and windows disjoint
    double eps = 0.05;
    const auto merged = law.merged();
    for (size_t i = 1; i < merged.atoms.size(); ++i) {
        const double gap = merged.atoms[i].location - merged.atoms[i - 1].location;
        eps = std::min(eps, 0.45 * gap);
    }
    const double floor5 = 5.0 * branch_sd / std::sqrt(static_cast<double>(n));
    return std::max(eps, floor5);
}

GofReport atom_cluster_test(std::span<const double> sample, const analytic::LimitLaw& law,
                            const AtomTestOptions& options, double alpha) {
    if (!law.gaussians.empty() &&
        [&] {
            double w = 0.0;
            for (const auto& g : law.gaussians) w += g.weight;
            return w > 0.0;
        }())
        throw std::invalid_argument("atom_cluster_test: law carries Gaussian weight");
    const auto merged = law.merged();
    merged.require_valid();
    if (sample.empty()) throw std::invalid_argument("atom_cluster_test: empty sample");
    const double eps = options.epsilon;
    if (!(eps > 0.0)) throw std::invalid_argument("atom_cluster_test: epsilon must be > 0");
    for (size_t i = 1; i < merged.atoms.size(); ++i)
        if (merged.atoms[i].location - merged.atoms[i - 1].location <= 2.0 * eps)
            throw std::invalid_argument(
                "atom_cluster_test: classification windows overlap; atoms must be "
                "separated by more than 2*epsilon");

    std::vector<long> counts(merged.atoms.size(), 0);
    long unclassified = 0;
    for (double x : sample) {
        bool hit = false;
        for (size_t i = 0; i < merged.atoms.size(); ++i) {
            if (std::fabs(x - merged.atoms[i].location) <= eps) {
                ++counts[i];
                hit = true;
                break;
            }
        }
        if (!hit) ++unclassified;
    }

    const double n_classified = static_cast<double>(sample.size() - unclassified);
    double chi2 = 0.0;
    for (size_t i = 0; i < merged.atoms.size(); ++i) {
        const double expect = merged.atoms[i].weight * static_cast<double>(sample.size());
        if (expect > 0.0) {
            const double d = counts[i] - expect;
            chi2 += d * d / expect;
        } else if (counts[i] > 0) {
            chi2 = std::numeric_limits<double>::infinity();
        }
    }

    GofReport rep;
    rep.test = "atom-cluster";
    rep.sample_size = static_cast<long>(sample.size());
    rep.law = merged.describe();
    rep.alpha = alpha;
    rep.statistic = chi2;
    const int dof = std::max<int>(1, static_cast<int>(merged.atoms.size()) - 1);
    rep.p_value = std::isinf(chi2) ? 0.0 : chi_square_sf(chi2, dof);
    const double frac_out = static_cast<double>(unclassified) / sample.size();
    rep.pass = *rep.p_value >= alpha && frac_out <= options.max_unclassified;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "chi2=%.6g (dof=%d), p=%.6g, unclassified=%.4g%%, classified=%g", chi2, dof,
                  *rep.p_value, 100.0 * frac_out, n_classified);
    rep.detail = buf;
    return rep;
}

GofReport moment_check(double observed, double predicted, double rel_tol, double abs_tol,
                       std::optional<double> mc_standard_error) {
    GofReport rep;
    rep.test = "moment-check";
    rep.statistic = std::fabs(observed - predicted);
    double band = std::max(abs_tol, rel_tol * std::fabs(predicted));
    if (mc_standard_error) band = std::max(band, 4.0 * *mc_standard_error);
    rep.pass = rep.statistic <= band;
    char buf[160];
    std::snprintf(buf, sizeof buf, "observed=%.10g predicted=%.10g |diff|=%.4g band=%.4g",
                  observed, predicted, rep.statistic, band);
    rep.detail = buf;
    rep.law = "moment target";
    return rep;
}

double lil_scale(long n, double sigma2) {
    const double ll = std::log(std::log(static_cast<double>(n)));
    if (!(ll > 0.0))
        throw std::invalid_argument("lil_scale: log log n undefined or nonpositive at n = " +
                                    std::to_string(n));
    return std::sqrt(2.0 * sigma2 * static_cast<double>(n) * ll);
}

LilSeries lil_diagnostic(std::span<const long> checkpoint_ns,
                         std::span<const double> checkpoint_values,
                         std::span<const double> prefix_means,
                         const std::function<double(long, double)>& centering,
                         const std::function<double(long)>& scale) {
    const size_t cp = checkpoint_ns.size();
    if (cp < 10)
        throw std::invalid_argument("lil_diagnostic: need at least 10 checkpoints");
    if (checkpoint_ns.back() < 1000)
        throw std::invalid_argument("lil_diagnostic: horizon too short (n < 1000)");
    if (checkpoint_values.size() % cp != 0)
        throw std::invalid_argument("lil_diagnostic: values not a paths x checkpoints matrix");
    const size_t paths = checkpoint_values.size() / cp;

    std::vector<double> scales(cp);
    for (size_t j = 0; j < cp; ++j) {
        scales[j] = scale(checkpoint_ns[j]);
        if (!(scales[j] > 0.0) || !std::isfinite(scales[j]))
            throw std::invalid_argument("lil_diagnostic: scale undefined at checkpoint n = " +
                                        std::to_string(checkpoint_ns[j]));
    }

    LilSeries out;
    out.checkpoints.assign(checkpoint_ns.begin(), checkpoint_ns.end());
    out.per_path_max.resize(paths);
    out.per_path_min.resize(paths);
    out.running_max.assign(cp, -std::numeric_limits<double>::infinity());
    out.running_min.assign(cp, std::numeric_limits<double>::infinity());
    for (size_t i = 0; i < paths; ++i) {
        double pmax = -std::numeric_limits<double>::infinity();
        double pmin = std::numeric_limits<double>::infinity();
        const double m1 = prefix_means.empty() ? 0.0 : prefix_means[i];
        for (size_t j = 0; j < cp; ++j) {
            const double v =
                (checkpoint_values[i * cp + j] - centering(checkpoint_ns[j], m1)) / scales[j];
            pmax = std::max(pmax, v);
            pmin = std::min(pmin, v);
            out.running_max[j] = std::max(out.running_max[j], pmax);
            out.running_min[j] = std::min(out.running_min[j], pmin);
        }
        out.per_path_max[i] = pmax;
        out.per_path_min[i] = pmin;
    }
    return out;
}

StabilizationSeries stabilization_diagnostic(std::span<const long> checkpoint_ns,
                                             std::span<const double> checkpoint_values,
                                             const std::function<double(long)>& normalizer) {
    const size_t cp = checkpoint_ns.size();
    if (cp == 0) throw std::invalid_argument("stabilization_diagnostic: no checkpoints");
    if (checkpoint_values.size() % cp != 0)
        throw std::invalid_argument("stabilization_diagnostic: bad matrix shape");
    const size_t paths = checkpoint_values.size() / cp;
    StabilizationSeries out;
    out.checkpoints.assign(checkpoint_ns.begin(), checkpoint_ns.end());
    out.mean.resize(cp);
    out.sd.resize(cp);
    for (size_t j = 0; j < cp; ++j) {
        const double norm = normalizer(checkpoint_ns[j]);
        double m = 0.0, s2 = 0.0;
        for (size_t i = 0; i < paths; ++i) m += norm * checkpoint_values[i * cp + j];
        m /= static_cast<double>(paths);
        for (size_t i = 0; i < paths; ++i) {
            const double d = norm * checkpoint_values[i * cp + j] - m;
            s2 += d * d;
        }
        out.mean[j] = m;
        out.sd[j] = std::sqrt(s2 / std::max<size_t>(1, paths - 1));
    }
    return out;
}

}  // namespace erw::stats
