#include "erw/laws.hpp"

#include <cmath>
#include <stdexcept>

#include "erw/enumerate.hpp"
#include "erw/errors.hpp"
#include "erw/formulas.hpp"

namespace erw::analytic {

namespace {

using Kind = MemorySpec::Kind;
using Centering = StatisticSpec::Centering;

constexpr double kCriticalTol = 1e-12;

bool is_critical(double p) { return std::fabs(p - 0.75) <= kCriticalTol; }

// Exact law of the prefix sum S_m of the walk's own first m steps; the branch
// weights of every multi-branch limit law.
oracle::ExactPMF prefix_law(const MemorySpec& spec, const WalkParams& params, long m) {
    return oracle::enumerate(spec, params, m);
}

LimitLaw atoms_from_prefix(const MemorySpec& spec, const WalkParams& params, long m,
                           double slope_per_mean) {
    // branch S_m = m - 2k drifts at slope_per_mean * S_m / m
    const auto pmf = prefix_law(spec, params, m);
    LimitLaw law;
    for (size_t i = 0; i < pmf.support.size(); ++i) {
        if (pmf.probs[i] == 0.0) continue;
        const double mean = static_cast<double>(pmf.support[i]) / static_cast<double>(m);
        law.atoms.push_back({slope_per_mean * mean, pmf.probs[i]});
    }
    return law.merged();
}

}  // namespace

double gaussian_moment(int m) {
    if (m < 0) throw std::invalid_argument("gaussian_moment: order must be >= 0");
    if (m % 2 == 1) return 0.0;
    double v = 1.0;
    for (int i = 1; i <= m; i += 2) v *= i;  // (m-1)!! = m!/(2^{m/2}(m/2)!)
    return v;
}

double skipfirst_first_step_prob(const MemorySpec& spec, const WalkParams& params) {
    if (spec.kind() != Kind::AllButFirstK)
        throw std::invalid_argument("skipfirst_first_step_prob: model is not skipfirst:k");
    const long k = spec.k();
    if (k == 0) return params.r;
    return oracle::enumerate_expectation(spec, params, k + 1,
                                         [k](std::span<const std::int8_t> path) {
                                             return path[static_cast<size_t>(k)] > 0 ? 1.0 : 0.0;
                                         });
}

LimitLaw scale_mixture(const LimitLaw& base, const StepMultiplier& mult) {
    mult.require_valid();
    base.require_valid();
    LimitLaw out;
    for (const auto& a : mult.atoms) {
        if (a.weight == 0.0) continue;
        if (a.value == 0.0) {
            out.atoms.push_back({0.0, a.weight});
            continue;
        }
        for (const auto& atom : base.atoms)
            out.atoms.push_back({atom.location * a.value, atom.weight * a.weight});
        for (const auto& g : base.gaussians)
            out.gaussians.push_back(
                {g.mean * a.value, g.variance * a.value * a.value, g.weight * a.weight});
    }
    return out.merged();
}

LimitLaw lln_limit_law(const MemorySpec& spec, const WalkParams& params) {
    require_valid(params, spec, /*strict=*/true);
    const double q = 2.0 * params.p - 1.0;
    switch (spec.kind()) {
        case Kind::Full:
        case Kind::LastK:
        case Kind::AllButFirstK:
            // S_n grows sublinearly in every regime here
            return LimitLaw::point(0.0);
        case Kind::FirstM:
            return atoms_from_prefix(spec, params, spec.m(), q);
        case Kind::FirstMLastK: {
            const int m = spec.m(), k = spec.k();
            if (m == 1 && k == 1)
                return atoms_from_prefix(spec, params, 1, q / (3.0 - 2.0 * params.p));
            if (m == 2 && k == 1)
                return atoms_from_prefix(spec, params, 2, q / (2.0 - params.p));
            throw NoFormulaError("no drift law in catalog for model '" + spec.name() + "'");
        }
    }
    throw NoFormulaError("no drift law in catalog for model '" + spec.name() + "'");
}

StatisticSpec::Centering default_centering(const MemorySpec& spec) {
    switch (spec.kind()) {
        case Kind::FirstM:
        case Kind::FirstMLastK:
            return Centering::random;
        default:
            return Centering::none;
    }
}

CltRecipe clt_limit_law(const MemorySpec& spec, const WalkParams& params, Centering mode,
                        const CltOptions& options) {
    require_valid(params, spec, /*strict=*/true);
    const double p = params.p;
    const double q = 2.0 * p - 1.0;
    const auto& s = params.start;

    StatisticSpec stat = StatisticSpec::clt_none();
    stat.centering = mode;

    const auto fixed_branch = [&](double slope, double variance,
                                  const std::string& name) -> CltRecipe {
        stat.fixed_slope = slope;
        return {LimitLaw::normal(0.0, variance), stat, name};
    };
    if (mode == Centering::fixed && !params.fixed_start())
        throw std::invalid_argument("fixed centering requires a fixed start prefix");

    switch (spec.kind()) {
        case Kind::Full: {
            if (mode != Centering::none)
                throw std::invalid_argument(
                    "full memory: only uncentered normalization is supported");
            if (p < 0.75 && !is_critical(p))
                return {LimitLaw::normal(0.0, 1.0 / (3.0 - 4.0 * p)), stat,
                        "full memory diffusive normal(0, 1/(3-4p))"};
            if (is_critical(p)) {
                stat.scale = StatisticSpec::Scale::sqrt_n_log_n;
                return {LimitLaw::normal(0.0, 1.0), stat,
                        "full memory critical normal(0,1) at sqrt(n log n) scale"};
            }
            throw NoFormulaError(
                "full memory with p > 3/4 is superdiffusive: no normal limit exists at "
                "any sqrt-type scaling; see the stabilization diagnostics instead");
        }
        case Kind::FirstM: {
            const int m = spec.m();
            if (mode == Centering::none)
                throw NoFormulaError(
                    "first:m branches drift apart without centering; use random centering");
            if (mode == Centering::fixed) {
                if (static_cast<int>(s.size()) < m)
                    throw std::invalid_argument(
                        "fixed centering for first:m needs the full m-step prefix");
                const double mean = static_cast<double>(params.start_sum()) / m;
                const double rk = (1.0 + q * mean) / 2.0;
                return fixed_branch(q * mean, 4.0 * rk * (1.0 - rk),
                                    "first:m fixed-branch normal");
            }
            stat.coeff = q;
            stat.prefix_len = m;
            // branch S_m = m-2k: success probability r_k = ((m-k)p + k(1-p))/m
            const auto pmf = prefix_law(spec, params, m);
            LimitLaw law;
            for (size_t i = 0; i < pmf.support.size(); ++i) {
                if (pmf.probs[i] == 0.0) continue;
                const double mean = static_cast<double>(pmf.support[i]) / m;
                const double rk = (1.0 + q * mean) / 2.0;
                law.gaussians.push_back({0.0, 4.0 * rk * (1.0 - rk), pmf.probs[i]});
            }
            return {law.merged(), stat, "first:m randomly centered mixture of branch normals"};
        }
        case Kind::LastK: {
            if (mode != Centering::none)
                throw std::invalid_argument("last:k needs no centering (drift is bounded)");
            if (spec.k() == 1)
                return {LimitLaw::normal(0.0, p / (1.0 - p)), stat,
                        "last:1 normal(0, p/(1-p))"};
            if (spec.k() == 2)
                return {LimitLaw::normal(0.0, sigma2_last2(p)), stat,
                        "last:2 normal(0, sigma2)"};
            throw NoFormulaError("no printed CLT variance for last:" +
                                 std::to_string(spec.k()) +
                                 "; the limit is normal but the catalog stops at k = 2");
        }
        case Kind::FirstMLastK: {
            const int m = spec.m(), k = spec.k();
            if (m == 1 && k == 1) {
                const double var = sigma2_first1_last1(p);
                const double slope = q / (3.0 - 2.0 * p);
                if (mode == Centering::none)
                    throw NoFormulaError(
                        "first:1+last:1 branches drift apart; use random centering");
                if (mode == Centering::fixed)
                    return fixed_branch(slope * s.at(0), var, "first:1+last:1 fixed branch");
                stat.coeff = slope;
                stat.prefix_len = 1;
                return {LimitLaw::normal(0.0, var), stat,
                        "first:1+last:1 randomly centered normal(0, sigma_T^2)"};
            }
            if (m == 2 && k == 1) {
                const double var_eq = sigma2_first2_last1(p);
                const double var_mix = sigma2_first2_last1_mixed(p);
                const double slope = q / (2.0 - p);
                if (mode == Centering::none)
                    throw NoFormulaError(
                        "first:2+last:1 branches drift apart; use random centering");
                if (mode == Centering::fixed) {
                    if (s.size() < 2)
                        throw std::invalid_argument(
                            "fixed centering for first:2+last:1 needs a 2-step prefix");
                    if (s[0] != s[1])
                        return fixed_branch(0.0, var_mix, "first:2+last:1 mixed branch");
                    return fixed_branch(slope * s[0], var_eq, "first:2+last:1 equal branch");
                }
                stat.coeff = slope;
                stat.prefix_len = 2;
                // the pair is equal with probability p regardless of r
                const auto pmf = prefix_law(spec, params, 2);
                const double w_eq = pmf.prob_of(2) + pmf.prob_of(-2);
                LimitLaw law;
                law.gaussians.push_back({0.0, var_eq, w_eq});
                law.gaussians.push_back({0.0, var_mix, 1.0 - w_eq});
                return {law.merged(), stat, "first:2+last:1 randomly centered two-component mixture"};
            }
            throw NoFormulaError("no CLT law in catalog for model '" + spec.name() + "'");
        }
        case Kind::AllButFirstK: {
            if (mode != Centering::none)
                throw std::invalid_argument("skipfirst:k needs no centering");
            if (!(p < 0.75))
                throw NoFormulaError(
                    "skipfirst:k inherits the full-memory regimes; p >= 3/4 has no "
                    "sqrt(n)-scale normal limit");
            const double pk = skipfirst_first_step_prob(spec, params);
            const double var = options.skipfirst_printed_variant ? 1.0 / (4.0 - 3.0 * pk)
                                                                 : 1.0 / (3.0 - 4.0 * pk);
            return {LimitLaw::normal(0.0, var), stat,
                    std::string("skipfirst:k normal, ") +
                        (options.skipfirst_printed_variant ? "1/(4-3p_k) variant"
                                                           : "1/(3-4p_k) variant") +
                        " with p_k = " + std::to_string(pk)};
        }
    }
    throw NoFormulaError("no CLT law in catalog for model '" + spec.name() + "'");
}

}  // namespace erw::analytic
