#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "erw/kernel.hpp"
#include "erw/memory_spec.hpp"
#include "erw/multiplier.hpp"
#include "erw/params.hpp"
#include "erw/window_state.hpp"

using erw::History;
using erw::MemorySpec;
using erw::WalkParams;

namespace {

std::vector<MemorySpec> spec_zoo() {
    return {MemorySpec::full(),          MemorySpec::first(1),
            MemorySpec::first(2),        MemorySpec::first(3),
            MemorySpec::last(1),         MemorySpec::last(2),
            MemorySpec::last(3),         MemorySpec::first_last(1, 1),
            MemorySpec::first_last(2, 1), MemorySpec::first_last(1, 2),
            MemorySpec::first_last(2, 2), MemorySpec::all_but_first(0),
            MemorySpec::all_but_first(2), MemorySpec::all_but_first(5)};
}

// brute-force reference for resolve()
std::set<long> naive_resolve(const MemorySpec& spec, long n) {
    std::set<long> s;
    using Kind = MemorySpec::Kind;
    switch (spec.kind()) {
        case Kind::Full:
            for (long i = 1; i <= n; ++i) s.insert(i);
            break;
        case Kind::FirstM:
            for (long i = 1; i <= std::min<long>(spec.m(), n); ++i) s.insert(i);
            break;
        case Kind::LastK:
            for (long i = std::max<long>(1, n - spec.k() + 1); i <= n; ++i) s.insert(i);
            break;
        case Kind::FirstMLastK:
            for (long i = 1; i <= std::min<long>(spec.m(), n); ++i) s.insert(i);
            for (long i = std::max<long>(1, n - spec.k() + 1); i <= n; ++i) s.insert(i);
            break;
        case Kind::AllButFirstK:
            for (long i = n >= spec.k() + 1 ? spec.k() + 1 : 1; i <= n; ++i) s.insert(i);
            break;
    }
    return s;
}

}  // namespace

TEST_CASE("resolve: pinned examples") {
    CHECK(MemorySpec::first(2).resolve(1) == std::vector<long>{1});
    CHECK(MemorySpec::last(2).resolve(5) == std::vector<long>{4, 5});
    CHECK(MemorySpec::first_last(1, 1).resolve(1) == std::vector<long>{1});
    CHECK(MemorySpec::all_but_first(2).resolve(2) == std::vector<long>{1, 2});
    CHECK(MemorySpec::all_but_first(2).resolve(5) == std::vector<long>{3, 4, 5});
    CHECK(MemorySpec::full().resolve(3) == std::vector<long>{1, 2, 3});
}

TEST_CASE("resolve: nonempty ordered subset matching the naive set, every n") {
    for (const auto& spec : spec_zoo()) {
        for (long n = 1; n <= 40; ++n) {
            const auto idx = spec.resolve(n);
            REQUIRE(!idx.empty());
            CHECK(static_cast<long>(idx.size()) == spec.window_size(n));
            const auto ref = naive_resolve(spec, n);
            CHECK(std::set<long>(idx.begin(), idx.end()) == ref);
            for (size_t i = 1; i < idx.size(); ++i) CHECK(idx[i - 1] < idx[i]);
            CHECK(idx.front() >= 1);
            CHECK(idx.back() <= n);
        }
    }
}

TEST_CASE("resolve: transition sources stay inside the previous window") {
    for (const auto& spec : spec_zoo()) {
        for (long n = 1; n <= 32; ++n) {
            const auto oldw = spec.resolve(n);
            const auto neww = spec.resolve(n + 1);
            const auto src = spec.transition_sources(n);
            REQUIRE(src.size() == neww.size());
            for (size_t b = 0; b < src.size(); ++b) {
                if (src[b] < 0)
                    CHECK(neww[b] == n + 1);
                else
                    CHECK(oldw[static_cast<size_t>(src[b])] == neww[b]);
            }
        }
    }
}

TEST_CASE("memory spec: grammar round trip and rejects") {
    for (const auto& spec : spec_zoo()) CHECK(MemorySpec::parse(spec.name()) == spec);
    CHECK_THROWS_AS(MemorySpec::parse("first:0"), std::invalid_argument);
    CHECK_THROWS_AS(MemorySpec::parse("last:0"), std::invalid_argument);
    CHECK_THROWS_AS(MemorySpec::parse("skipfirst:-1"), std::invalid_argument);
    CHECK_THROWS_AS(MemorySpec::parse("first:2+first:1"), std::invalid_argument);
    CHECK_THROWS_AS(MemorySpec::parse("middle:3"), std::invalid_argument);
    CHECK_THROWS_AS(MemorySpec::first(0), std::invalid_argument);
    CHECK_THROWS_AS(MemorySpec::last(-1), std::invalid_argument);
}

TEST_CASE("prob_up: pinned kernel values") {
    WalkParams params;
    params.p = 0.75;
    // full memory, window (+1,+1,-1): p*2/3 + (1-p)*1/3 = 7/12
    const auto h3 = History::from_window(3, {1, 1, -1});
    CHECK(erw::prob_up(MemorySpec::full(), params, h3) == doctest::Approx(7.0 / 12).epsilon(1e-15));

    // last step -1: 1 - p
    const auto h1 = History::from_window(5, {-1});
    CHECK(erw::prob_up(MemorySpec::last(1), params, h1) == doctest::Approx(0.25).epsilon(1e-15));

    // balanced window: 1/2 for every p
    const auto hb = History::from_window(5, {1, -1});
    for (double p : {0.0, 0.3, 0.6, 1.0}) {
        params.p = p;
        CHECK(erw::prob_up(MemorySpec::first_last(1, 1), params, hb) == 0.5);
    }
}

TEST_CASE("prob_up: p=1/2 gives 1/2 for every spec and history") {
    WalkParams params;
    params.p = 0.5;
    std::mt19937 gen(7);
    for (const auto& spec : spec_zoo()) {
        for (int rep = 0; rep < 20; ++rep) {
            erw::WindowState ws(spec);
            const long n = 1 + gen() % 30;
            for (long i = 0; i < n; ++i) ws.push(gen() % 2 ? 1 : -1);
            CHECK(erw::prob_up(spec, params, ws.history()) == 0.5);
        }
    }
}

TEST_CASE("prob_up: complement and sign-flip symmetry") {
    std::mt19937 gen(11);
    for (const auto& spec : spec_zoo()) {
        for (double p : {0.1, 0.25, 0.6, 0.75, 0.9}) {
            WalkParams params;
            params.p = p;
            erw::WindowState ws(spec);
            erw::WindowState mirrored(spec);
            const long n = 1 + gen() % 20;
            for (long i = 0; i < n; ++i) {
                const int s = gen() % 2 ? 1 : -1;
                ws.push(s);
                mirrored.push(-s);
            }
            const double up = erw::prob_up(spec, params, ws.history());
            const double up_m = erw::prob_up(spec, params, mirrored.history());
            CHECK(up >= 0.0);
            CHECK(up <= 1.0);
            CHECK(std::fabs(up + up_m - 1.0) <= 1e-15);
        }
    }
}

TEST_CASE("prob_up: affine in the window mean (three-point collinearity)") {
    WalkParams params;
    params.p = 0.65;
    const MemorySpec spec = MemorySpec::last(3);
    const auto q = [&](std::vector<std::int8_t> w) {
        return erw::prob_up(spec, params, History::from_window(5, std::move(w)));
    };
    const double m1 = -1.0, q1 = q({-1, -1, -1});
    const double m2 = -1.0 / 3, q2 = q({-1, -1, 1});
    const double m3 = 1.0, q3 = q({1, 1, 1});
    CHECK(std::fabs((q3 - q1) * (m2 - m1) - (q2 - q1) * (m3 - m1)) <= 1e-15);
    // slope in the mean is (2p-1)/2
    CHECK((q3 - q1) / (m3 - m1) == doctest::Approx((2 * params.p - 1) / 2).epsilon(1e-12));
}

TEST_CASE("prob_up: inconsistent history is rejected") {
    WalkParams params;
    params.p = 0.75;
    CHECK_THROWS_AS(erw::prob_up(MemorySpec::last(2), params, History::from_window(5, {1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(erw::prob_up(MemorySpec::full(), params, History::from_window(3, {1, 1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        erw::prob_up(MemorySpec::full(), params, History::from_window(2, {1, 3})),
        std::invalid_argument);
    // sum-only history works for growing windows, with bound/parity checks
    CHECK_NOTHROW(erw::prob_up(MemorySpec::full(), params, History::from_sum(4, 2, 4)));
    CHECK_NOTHROW(erw::prob_up(MemorySpec::all_but_first(2), params, History::from_sum(5, 1, 3)));
    CHECK_THROWS_AS(erw::prob_up(MemorySpec::full(), params, History::from_sum(4, 3, 4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(erw::prob_up(MemorySpec::full(), params, History::from_sum(4, 2, 3)),
                    std::invalid_argument);
}

TEST_CASE("window state: matches resolve-based recomputation") {
    std::mt19937 gen(23);
    for (const auto& spec : spec_zoo()) {
        erw::WindowState ws(spec);
        std::vector<int> steps;
        for (long n = 1; n <= 40; ++n) {
            const int s = gen() % 2 ? 1 : -1;
            steps.push_back(s);
            ws.push(s);
            long sum = 0;
            for (long idx : spec.resolve(n)) sum += steps[static_cast<size_t>(idx - 1)];
            CHECK(ws.window_sum() == sum);
            CHECK(ws.window_count() == spec.window_size(n));
            if (spec.bounded_window()) {
                const auto vals = ws.window_values();
                const auto idx = spec.resolve(n);
                REQUIRE(vals.size() == idx.size());
                for (size_t i = 0; i < idx.size(); ++i)
                    CHECK(vals[i] == steps[static_cast<size_t>(idx[i] - 1)]);
            }
        }
    }
}

TEST_CASE("validate: reports the violated invariant") {
    const auto spec = MemorySpec::first(1);
    WalkParams params;
    params.p = 1.2;
    auto rep = erw::validate(params, spec);
    REQUIRE(!rep.ok());
    CHECK(rep.message().find("p out of range") != std::string::npos);

    params.p = 1.0;
    CHECK(erw::validate(params, spec).ok());
    rep = erw::validate(params, spec, /*strict=*/true);
    REQUIRE(!rep.ok());
    CHECK(rep.message().find("0 < p < 1") != std::string::npos);

    params.p = 0.75;
    params.r = 0.75;
    CHECK(erw::validate(params, spec).ok());

    params.start = {2};
    CHECK(!erw::validate(params, spec).ok());
    params.start = {1, -1, 1};
    CHECK(!erw::validate(params, spec).ok());
    params.start = {1, -1};
    CHECK(erw::validate(params, spec).ok());

    params.r = -0.1;
    CHECK(!erw::validate(params, spec).ok());
}

TEST_CASE("step multiplier: validity and moments") {
    auto m = erw::StepMultiplier::uniform({-2, -1, 1, 2});
    CHECK(m.valid());
    CHECK(m.moment(2) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(m.moment(1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(m.prob_zero() == 0.0);

    auto sign = erw::StepMultiplier::sign(0.6);
    CHECK(sign.moment(1) == doctest::Approx(0.2).epsilon(1e-15));

    erw::StepMultiplier bad{{{1.0, 0.7}, {-1.0, 0.2}}};
    CHECK(!bad.valid());
    CHECK_THROWS_AS(bad.require_valid(), std::invalid_argument);
}
