#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "erw/gof.hpp"
#include "erw/limit_law.hpp"
#include "erw/special.hpp"

using erw::analytic::LimitLaw;
namespace stats = erw::stats;

namespace {

// draw from a LimitLaw (test-only sampler, ordinary mt19937 is fine here)
std::vector<double> sample_law(const LimitLaw& law, size_t count, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<> unif(0.0, 1.0);
    std::normal_distribution<> normal(0.0, 1.0);
    std::vector<double> out(count);
    for (auto& x : out) {
        double u = unif(gen);
        bool placed = false;
        for (const auto& a : law.atoms) {
            if (u < a.weight) {
                x = a.location;
                placed = true;
                break;
            }
            u -= a.weight;
        }
        if (placed) continue;
        for (const auto& g : law.gaussians) {
            if (u < g.weight) {
                x = g.mean + std::sqrt(g.variance) * normal(gen);
                placed = true;
                break;
            }
            u -= g.weight;
        }
        if (!placed) x = law.gaussians.back().mean;
    }
    return out;
}

}  // namespace

TEST_CASE("mixture cdf: pinned values, monotonicity, limits") {
    const auto n01 = LimitLaw::normal(0.0, 1.0);
    CHECK(stats::mixture_cdf(n01, 0.0) == doctest::Approx(0.5).epsilon(1e-15));

    LimitLaw half_atom;
    half_atom.atoms.push_back({0.0, 0.5});
    half_atom.gaussians.push_back({0.0, 1.0, 0.5});
    CHECK(stats::mixture_cdf(half_atom, 0.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(stats::mixture_cdf(half_atom, -1e9) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(stats::mixture_cdf(half_atom, 1e9) == doctest::Approx(1.0).epsilon(1e-12));

    double prev = -1.0;
    for (double x = -6.0; x <= 6.0; x += 0.01) {
        const double f = stats::mixture_cdf(half_atom, x);
        CHECK(f - prev >= -1e-15);
        prev = f;
    }
}

TEST_CASE("ks statistic: hand-checked three-point sample against N(0,1)") {
    const std::vector<double> sample{-1.0, 0.0, 1.0};
    const double d = stats::ks_statistic(sample, LimitLaw::normal(0.0, 1.0));
    // max deviation is 1/3 - Phi(-1) = 0.17467807940187627
    CHECK(d == doctest::Approx(1.0 / 3 - stats::normal_cdf(-1.0)).epsilon(1e-14));
    CHECK(d == doctest::Approx(0.1746780794).epsilon(1e-9));
}

TEST_CASE("ks test: guards") {
    const auto law = LimitLaw::normal(0.0, 1.0);
    const std::vector<double> small(5, 0.0);
    CHECK_THROWS_AS(stats::ks_test(small, law, 0.01), std::invalid_argument);

    LimitLaw with_atom;
    with_atom.atoms.push_back({0.0, 0.5});
    with_atom.gaussians.push_back({0.0, 1.0, 0.5});
    const auto big = sample_law(law, 200, 1);
    CHECK_THROWS_AS(stats::ks_test(big, with_atom, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(stats::ks_test(big, law, 0.0), std::invalid_argument);
}

TEST_CASE("ks test: gross mismatch fails, matching law passes") {
    const auto n01 = LimitLaw::normal(0.0, 1.0);
    const auto n04 = LimitLaw::normal(0.0, 4.0);
    const auto sample = sample_law(n01, 10000, 42);
    CHECK(stats::ks_test(sample, n01, 0.01).pass);
    const auto rep = stats::ks_test(sample, n04, 0.01);
    CHECK(!rep.pass);
    CHECK(*rep.p_value < 1e-10);
}

TEST_CASE("ks test: null p-values are roughly uniform over 200 seeds") {
    const LimitLaw law = [] {
        LimitLaw l;
        l.gaussians.push_back({0.0, 2.0, 0.7});
        l.gaussians.push_back({1.0, 0.5, 0.3});
        return l;
    }();
    int rejections_01 = 0, rejections_05 = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto sample = sample_law(law, 10000, 1000 + seed);
        const auto rep = stats::ks_test(sample, law, 0.05);
        if (*rep.p_value < 0.01) ++rejections_01;
        if (*rep.p_value < 0.05) ++rejections_05;
    }
    CHECK(rejections_01 <= 4);  // ~1% of 200
    CHECK(rejections_05 >= 2);  // [0.01, 0.10] of 200
    CHECK(rejections_05 <= 20);
}

TEST_CASE("kolmogorov sf: critical values and monotonicity") {
    CHECK(stats::kolmogorov_sf(1.3581) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(stats::kolmogorov_sf(1.6276) == doctest::Approx(0.01).epsilon(0.02));
    CHECK(stats::kolmogorov_sf(0.05) == 1.0);
    CHECK(stats::kolmogorov_sf(10.0) <= 1e-80);
    double prev = 1.0;
    for (double l = 0.2; l < 3.0; l += 0.01) {
        const double q = stats::kolmogorov_sf(l);
        CHECK(q <= prev + 1e-12);
        prev = q;
    }
}

TEST_CASE("chi-square sf agrees with closed forms") {
    for (double x : {0.5, 1.0, 2.5, 7.0}) {
        CHECK(stats::chi_square_sf(x, 1) ==
              doctest::Approx(std::erfc(std::sqrt(x / 2))).epsilon(1e-12));
        CHECK(stats::chi_square_sf(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-12));
    }
    CHECK(stats::chi_square_sf(0.0, 3) == 1.0);
}

TEST_CASE("atom cluster test: constant sample at the unique atom") {
    const auto law = LimitLaw::point(0.7);
    const std::vector<double> sample(500, 0.7);
    const auto rep = stats::atom_cluster_test(sample, law, {}, 0.01);
    CHECK(rep.pass);
    CHECK(rep.statistic == 0.0);
}

TEST_CASE("atom cluster test: overlapping windows are rejected") {
    LimitLaw law;
    law.atoms.push_back({0.01, 0.5});
    law.atoms.push_back({-0.01, 0.5});
    const std::vector<double> sample(200, 0.0);
    stats::AtomTestOptions opt;
    opt.epsilon = 0.05;
    CHECK_THROWS_AS(stats::atom_cluster_test(sample, law, opt, 0.01), std::invalid_argument);
}

TEST_CASE("atom cluster test: classification against known weights") {
    LimitLaw law;
    law.atoms.push_back({0.2, 0.36});
    law.atoms.push_back({0.0, 0.40});
    law.atoms.push_back({-0.2, 0.24});
    // sample exactly at the atoms with tiny jitter
    std::mt19937_64 gen(3);
    std::normal_distribution<> jitter(0.0, 0.004);
    auto sample = sample_law(law, 100000, 77);
    for (auto& x : sample) x += jitter(gen);
    const auto rep = stats::atom_cluster_test(sample, law, {}, 0.01);
    CHECK(rep.pass);

    // reordering the atoms does not change the verdict or statistic
    LimitLaw reordered;
    reordered.atoms = {law.atoms[2], law.atoms[0], law.atoms[1]};
    const auto rep2 = stats::atom_cluster_test(sample, reordered, {}, 0.01);
    CHECK(rep2.pass == rep.pass);
    CHECK(rep2.statistic == doctest::Approx(rep.statistic).epsilon(1e-12));
}

TEST_CASE("atom cluster test: unclassified excess fails") {
    const auto law = LimitLaw::point(0.0);
    std::vector<double> sample(1000, 0.0);
    for (size_t i = 0; i < 100; ++i) sample[i] = 5.0;  // 10% outliers
    const auto rep = stats::atom_cluster_test(sample, law, {}, 0.01);
    CHECK(!rep.pass);
}

TEST_CASE("suggested epsilon keeps windows disjoint and 5-sigma wide") {
    LimitLaw law;
    law.atoms.push_back({0.2, 0.5});
    law.atoms.push_back({0.0, 0.5});
    const double eps = stats::suggest_atom_epsilon(law, 1.0, 100000);
    CHECK(eps > 0.0);
    CHECK(eps < 0.1);                                  // disjoint
    CHECK(eps >= 5.0 * 1.0 / std::sqrt(100000.0));     // 5 sigma floor
}

TEST_CASE("moment check: bands and sign symmetry") {
    CHECK(stats::moment_check(1.0000000001, 1.0, 1e-8, 0.0).pass);
    CHECK(!stats::moment_check(1.01, 1.0, 1e-8, 0.0).pass);
    CHECK(stats::moment_check(1.01, 1.0, 1e-8, 0.0, 0.01).pass);  // 4*SE band
    const auto a = stats::moment_check(0.95, 1.0, 0.06, 0.0);
    const auto b = stats::moment_check(-0.95, -1.0, 0.06, 0.0);
    CHECK(a.pass == b.pass);
    CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-15));
}

TEST_CASE("lil diagnostic: shape checks and monotone envelope") {
    const std::vector<long> ns{4,    8,    16,   32,   64,   128,
                               256,  512,  1024, 2048, 4096};
    const size_t paths = 50;
    std::vector<double> values(paths * ns.size());
    std::mt19937_64 gen(9);
    std::normal_distribution<> normal(0.0, 1.0);
    for (size_t i = 0; i < paths; ++i)
        for (size_t j = 0; j < ns.size(); ++j)
            values[i * ns.size() + j] = std::sqrt(double(ns[j])) * normal(gen);

    const auto series = stats::lil_diagnostic(
        ns, values, {}, [](long, double) { return 0.0; },
        [](long n) { return stats::lil_scale(n, 1.0); });
    REQUIRE(series.running_max.size() == ns.size());
    for (size_t j = 1; j < ns.size(); ++j) {
        CHECK(series.running_max[j] >= series.running_max[j - 1]);
        CHECK(series.running_min[j] <= series.running_min[j - 1]);
    }
    for (size_t i = 0; i < paths; ++i)
        CHECK(series.per_path_max[i] >= series.per_path_min[i]);

    // too few checkpoints
    const std::vector<long> few{1024, 2048};
    CHECK_THROWS_AS(stats::lil_diagnostic(
                        few, std::vector<double>(paths * 2, 0.0), {},
                        [](long, double) { return 0.0; }, [](long) { return 1.0; }),
                    std::invalid_argument);
    // log log n undefined at n <= e
    CHECK_THROWS_AS(stats::lil_scale(2, 1.0), std::invalid_argument);
    CHECK(stats::lil_scale(1000, 1.0) > 0.0);
}

TEST_CASE("stabilization diagnostic: constant normalized paths have zero spread") {
    const std::vector<long> ns{1, 2, 4, 8};
    std::vector<double> values;
    for (size_t i = 0; i < 10; ++i)
        for (long n : ns) values.push_back(double(n) * (i % 2 ? 1.0 : -1.0));
    const auto series = stats::stabilization_diagnostic(
        ns, values, [](long n) { return 1.0 / double(n); });
    for (size_t j = 0; j < ns.size(); ++j) {
        CHECK(series.mean[j] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(series.sd[j] == doctest::Approx(series.sd[0]).epsilon(1e-12));
    }
}
