#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "erw/errors.hpp"
#include "erw/kernel.hpp"
#include "erw/params.hpp"
#include "erw/window_state.hpp"

namespace erw::oracle {

inline constexpr int kMaxMomentPower = 12;

// Joint moments at time n: values[a * mask_count + mask] = E(T_n^a * W) where
// W is the product of the window steps selected by `mask` (bit i of the mask
// picks window[i], i.e. the i-th index of resolve(n)). Mask 0 gives the plain
// moments E(T_n^a). Unbounded windows (full, skipfirst) carry plain moments
// only: window is empty and mask_count is 1.
template <class Real>
struct BasicMomentTable {
    long n = 0;
    int max_power = 0;
    std::vector<long> window;
    std::vector<Real> values;

    size_t mask_count() const { return size_t{1} << window.size(); }
    const Real& mixed(int power, unsigned mask) const {
        return values[static_cast<size_t>(power) * mask_count() + mask];
    }
    const Real& moment(int power) const { return mixed(power, 0u); }
    Real central_second() const {  // Var(T_n)
        const Real m = moment(1);
        return moment(2) - m * m;
    }
};

using MomentTable = BasicMomentTable<double>;

namespace detail {

// Binomial coefficients as exact small integers in double (also exact when
// lifted into the rational tier).
inline const double* binomial_row(int a) {
    static const auto table = [] {
        std::array<std::array<double, kMaxMomentPower + 1>, kMaxMomentPower + 1> t{};
        for (int i = 0; i <= kMaxMomentPower; ++i) {
            t[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                t[i][j] = t[i - 1][j - 1] + (j <= i - 1 ? t[i - 1][j] : 0.0);
        }
        return t;
    }();
    return table[static_cast<size_t>(a)].data();
}

// One step of the bounded-window recursion. Expanding T_{j+1}^a by the
// binomial theorem and reducing even powers of the new step to 1 closes the
// system over E(T^a * square-free window monomials):
//
//   E(T^c * W * X_{j+1} | F_j) = (2p-1)/|I_j| * sum_u E(T^c * W * X_u),
//
// and W * X_u toggles membership of X_u in the monomial.
template <class Real>
void step_bounded(const MemorySpec& spec, const Real& two_p_minus_1, long j, int max_power,
                  std::vector<Real>& vals, std::vector<Real>& oddsum, std::vector<Real>& next) {
    const long w = spec.window_size(j);
    const long w1 = spec.window_size(j + 1);
    const size_t masks = size_t{1} << w;
    const size_t masks1 = size_t{1} << w1;
    const auto src = spec.transition_sources(j);

    oddsum.assign((static_cast<size_t>(max_power) + 1) * masks, Real(0));
    for (int c = 0; c <= max_power; ++c)
        for (size_t b = 0; b < masks; ++b) {
            Real acc(0);
            for (long u = 0; u < w; ++u) acc += vals[c * masks + (b ^ (size_t{1} << u))];
            oddsum[c * masks + b] = acc;
        }
    const Real coeff = two_p_minus_1 / Real(w);

    next.assign((static_cast<size_t>(max_power) + 1) * masks1, Real(0));
    for (size_t mask1 = 0; mask1 < masks1; ++mask1) {
        int e = 0;
        size_t base = 0;
        for (size_t b = 0; b < src.size(); ++b) {
            if (!(mask1 >> b & 1u)) continue;
            if (src[b] < 0)
                e = 1;
            else
                base |= size_t{1} << src[b];
        }
        for (int a = 0; a <= max_power; ++a) {
            const auto* binom = binomial_row(a);
            Real acc(0);
            for (int b = 0; b <= a; ++b) {
                const int c = a - b;
                if (((b + e) & 1) == 0)
                    acc += Real(binom[b]) * vals[static_cast<size_t>(c) * masks + base];
                else
                    acc += Real(binom[b]) * coeff * oddsum[static_cast<size_t>(c) * masks + base];
            }
            next[static_cast<size_t>(a) * masks1 + mask1] = acc;
        }
    }
    vals.swap(next);
}

// Full memory: the window mean is T_j / j, so plain moments close on
// themselves (odd powers of the new step pull in E(T^{c+1}) / j).
template <class Real>
void step_full(const Real& two_p_minus_1, long j, int max_power, std::vector<Real>& vals,
               std::vector<Real>& next) {
    const Real coeff = two_p_minus_1 / Real(j);
    next.assign(static_cast<size_t>(max_power) + 1, Real(0));
    for (int a = 0; a <= max_power; ++a) {
        const auto* binom = binomial_row(a);
        Real acc(0);
        for (int b = 0; b <= a; ++b) {
            const int c = a - b;
            if ((b & 1) == 0)
                acc += Real(binom[b]) * vals[static_cast<size_t>(c)];
            else
                acc += Real(binom[b]) * coeff * vals[static_cast<size_t>(c) + 1];
        }
        next[static_cast<size_t>(a)] = acc;
    }
    vals.swap(next);
}

// skipfirst:k. V_j is the sum of the steps after the first k; the kernel mean
// is T_j/j during the full-rule warmup (j <= k) and V_j/(j-k) afterwards.
// Joint moments E(T^a V^c) with a + c <= max_power are closed: every odd
// power of the new step raises the total degree it removes.
template <class Real>
void step_skipfirst(int k, const Real& two_p_minus_1, long j, int max_power,
                    std::vector<Real>& vals, std::vector<Real>& next) {
    const int P = max_power;
    const auto at = [P](std::vector<Real>& v, int a, int c) -> Real& {
        return v[static_cast<size_t>(a) * (P + 1) + c];
    };
    next.assign(static_cast<size_t>(P + 1) * (P + 1), Real(0));
    const bool warm = j <= k;  // kernel still on the full rule
    const Real coeff = warm ? two_p_minus_1 / Real(j) : two_p_minus_1 / Real(j - k);
    for (int a = 0; a <= P; ++a) {
        const auto* binA = binomial_row(a);
        for (int c = 0; a + c <= P; ++c) {
            if (j + 1 <= k && c > 0) continue;  // V_{j+1} is still identically 0
            const auto* binC = binomial_row(c);
            const int dmax = j + 1 <= k ? 0 : c;  // V does not move during warmup
            Real acc(0);
            for (int b = 0; b <= a; ++b) {
                for (int d = 0; d <= dmax; ++d) {
                    const Real f = Real(binA[b]) * Real(binC[d]);
                    const int ta = a - b, tc = c - d;
                    if (((b + d) & 1) == 0)
                        acc += f * at(vals, ta, tc);
                    else if (warm)
                        acc += f * coeff * at(vals, ta + 1, tc);
                    else
                        acc += f * coeff * at(vals, ta, tc + 1);
                }
            }
            at(next, a, c) = acc;
        }
    }
    vals.swap(next);
}

}  // namespace detail

// Exact joint moment table of T_n (and the window monomials for bounded
// windows) via one-step recursions; O(n) in the horizon, so usable far beyond
// the reach of enumeration. A start prefix conditions the walk; without one
// the table mixes the +1 and -1 first-step tables with weights r and 1-r.
template <class Real>
BasicMomentTable<Real> exact_moments_t(const MemorySpec& spec, const Real& p, const Real& r,
                                       const std::vector<int>& start, long n, int max_power) {
    if (n < 1) throw std::invalid_argument("exact_moments: n must be >= 1");
    if (static_cast<long>(start.size()) > n)
        throw std::invalid_argument("exact_moments: start prefix longer than n");
    if (max_power < 0 || max_power > kMaxMomentPower)
        throw CapabilityError("exact_moments supports powers up to " +
                              std::to_string(kMaxMomentPower));
    if (spec.bounded_window() && spec.window_capacity() > 16)
        throw CapabilityError("exact_moments: window wider than 16 steps");

    const Real two_p_minus_1 = Real(2) * p - Real(1);
    const bool bounded = spec.bounded_window();
    const bool skip = spec.kind() == MemorySpec::Kind::AllButFirstK;

    // Initial state at the end of the prefix; empty prefix mixes +-1 starts.
    const auto init_state = [&](const std::vector<int>& prefix) {
        WindowState ws(spec);
        long t = 0, v = 0;
        for (int s : prefix) {
            ws.push(s);
            t += s;
            if (skip && ws.n() > spec.k()) v += s;
        }
        std::vector<Real> vals;
        if (bounded) {
            const auto values = ws.window_values();
            const size_t masks = size_t{1} << values.size();
            vals.assign((static_cast<size_t>(max_power) + 1) * masks, Real(0));
            for (int a = 0; a <= max_power; ++a) {
                Real ta(1);
                for (int i = 0; i < a; ++i) ta *= Real(t);
                for (size_t mask = 0; mask < masks; ++mask) {
                    int sign = 1;
                    for (size_t i = 0; i < values.size(); ++i)
                        if (mask >> i & 1u) sign *= values[i];
                    vals[static_cast<size_t>(a) * masks + mask] = ta * Real(sign);
                }
            }
        } else if (skip) {
            const int P = max_power;
            vals.assign(static_cast<size_t>(P + 1) * (P + 1), Real(0));
            for (int a = 0; a <= P; ++a)
                for (int c = 0; a + c <= P; ++c) {
                    Real x(1);
                    for (int i = 0; i < a; ++i) x *= Real(t);
                    for (int i = 0; i < c; ++i) x *= Real(v);
                    vals[static_cast<size_t>(a) * (P + 1) + c] = x;
                }
        } else {
            vals.assign(static_cast<size_t>(max_power) + 1, Real(0));
            for (int a = 0; a <= max_power; ++a) {
                Real ta(1);
                for (int i = 0; i < a; ++i) ta *= Real(t);
                vals[static_cast<size_t>(a)] = ta;
            }
        }
        return vals;
    };

    long j0 = static_cast<long>(start.size());
    std::vector<Real> vals;
    if (j0 == 0) {
        j0 = 1;
        const auto up = init_state({+1});
        const auto down = init_state({-1});
        vals.resize(up.size());
        for (size_t i = 0; i < vals.size(); ++i)
            vals[i] = r * up[i] + (Real(1) - r) * down[i];
    } else {
        vals = init_state(start);
    }

    std::vector<Real> scratch_odd, scratch_next;
    for (long j = j0; j < n; ++j) {
        if (bounded)
            detail::step_bounded(spec, two_p_minus_1, j, max_power, vals, scratch_odd,
                                 scratch_next);
        else if (skip)
            detail::step_skipfirst(spec.k(), two_p_minus_1, j, max_power, vals, scratch_next);
        else
            detail::step_full(two_p_minus_1, j, max_power, vals, scratch_next);
    }

    BasicMomentTable<Real> table;
    table.n = n;
    table.max_power = max_power;
    if (bounded) {
        table.window = spec.resolve(n);
        table.values = std::move(vals);
    } else if (skip) {
        table.values.resize(static_cast<size_t>(max_power) + 1);
        for (int a = 0; a <= max_power; ++a)
            table.values[static_cast<size_t>(a)] =
                vals[static_cast<size_t>(a) * (max_power + 1)];
    } else {
        table.values = std::move(vals);
    }
    return table;
}

MomentTable exact_moments(const MemorySpec& spec, const WalkParams& params, long n,
                          int max_power);

}  // namespace erw::oracle
