#include "maxwalk/error.hpp"
#include "maxwalk/montecarlo.hpp"
#include "maxwalk/parallel.hpp"

#include <doctest.h>

#include <json.hpp>

#include <map>
#include <numeric>
#include <sstream>

using namespace maxwalk;

namespace {

const WalkLaws& walk16(const std::string& name) {
    static std::map<std::string, WalkLaws> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, WalkLaws(DistributionSpec::named(name), 16, GridSpec::for_walk(16, 1u << 14))).first;
    return it->second;
}

bool same(const EmpiricalSummary& a, const EmpiricalSummary& b) {
    return a.Fbar0_hat == b.Fbar0_hat && a.mean_max_scaled == b.mean_max_scaled && a.m2_plus_hat == b.m2_plus_hat &&
           a.m2_se == b.m2_se && a.counts == b.counts;
}

} // namespace

TEST_SUITE("montecarlo") {

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::apply(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::apply(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::apply(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("uniforms stay inside (0, 1)") {
    CHECK(to_unit_open(0, 0) > 0);
    CHECK(to_unit_open(0xffffffff, 0xffffffff) < 1);
    CHECK(to_unit_open(0x80000000, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("argument checks") {
    const DistributionSpec g = DistributionSpec::named("gaussian");
    CHECK_THROWS_AS(simulate(g, 0, 10000, 1), Error);
    CHECK_THROWS_AS(simulate(g, 4, 9999, 1), Error);
    CHECK_THROWS_AS(simulate(g, 4, 10000, 1, {1.0, 0.0, 10}), Error);
    const EmpiricalSummary s = simulate(DistributionSpec::named("laplace"), 4, 10000, 1);
    CHECK_THROWS_AS(empirical_compare(s, walk16("gaussian")), Error);
    const EmpiricalSummary t = simulate(g, 32, 10000, 1);
    CHECK_THROWS_AS(empirical_compare(t, walk16("gaussian")), Error);
}

TEST_CASE("one gaussian step is positive half the time") {
    const EmpiricalSummary s = simulate(DistributionSpec::named("gaussian"), 1, 100000, 7);
    CHECK(std::abs(s.Fbar0_hat - 0.5) <= 3 * std::sqrt(0.25 / 1e5));
    CHECK(s.Fbar0_se == doctest::Approx(std::sqrt(s.Fbar0_hat * (1 - s.Fbar0_hat) / 1e5)).epsilon(1e-12));
}

TEST_CASE("reproducible and independent of the thread count") {
    const DistributionSpec m = DistributionSpec::named("mixture");
    set_thread_count(1);
    const EmpiricalSummary a = simulate(m, 9, 200000, 42);
    set_thread_count(3);
    const EmpiricalSummary b = simulate(m, 9, 200000, 42);
    const EmpiricalSummary c = simulate(m, 9, 200000, 42);
    set_thread_count(0);
    CHECK(same(a, b));
    CHECK(same(b, c));
    CHECK(summary_json(a) == summary_json(b));
    const EmpiricalSummary d = simulate(m, 9, 200000, 43);
    CHECK_FALSE(same(a, d));
}

TEST_CASE("histogram covers every sample") {
    const EmpiricalSummary s = simulate(DistributionSpec::named("spike"), 5, 50000, 3);
    CHECK(std::accumulate(s.counts.begin(), s.counts.end(), 0LL) == 50000);
    CHECK(s.edges.size() == s.counts.size() + 1);
    CHECK(std::isinf(s.edges.front()));
    CHECK(std::isinf(s.edges.back()));
}

TEST_CASE("simulation agrees with the grid walk") {
    for (auto name : {"gaussian", "uniform", "laplace", "mixture", "spike"}) {
        CAPTURE(name);
        for (int n : {1, 4, 16}) {
            CAPTURE(n);
            const EmpiricalSummary s = simulate(DistributionSpec::named(name), n, 1000000, 20240607);
            const EmpiricalComparison c = empirical_compare(s, walk16(name));
            CHECK(c.fbar_z <= 4.0);
            CHECK(c.mean_z <= 4.0);
            CHECK(c.m2_z <= 4.0);
            CHECK(c.tv_hist <= 0.01 + c.binning_allowance);
        }
    }
}

TEST_CASE("histogram distance under bin refinement") {
    const DistributionSpec g = DistributionSpec::named("gaussian");
    const EmpiricalSummary a = simulate(g, 8, 1000000, 11, {-3.0, 5.0, 80});
    const EmpiricalSummary b = simulate(g, 8, 1000000, 11, {-3.0, 5.0, 160});
    const EmpiricalComparison ca = empirical_compare(a, walk16("gaussian"));
    const EmpiricalComparison cb = empirical_compare(b, walk16("gaussian"));
    CHECK(ca.tv_hist <= 0.01 + ca.binning_allowance);
    CHECK(cb.tv_hist <= 0.01 + cb.binning_allowance);
    // finer bins can only split the same samples further
    CHECK(cb.tv_hist >= ca.tv_hist - 1e-12);
    CHECK(a.Fbar0_hat == b.Fbar0_hat);
}

TEST_CASE("output layout") {
    const EmpiricalSummary s = simulate(DistributionSpec::named("uniform"), 3, 10000, 5);
    const auto j = nlohmann::json::parse(summary_json(s));
    for (auto key : {"spec", "n", "samples", "seed", "Fbar0_hat", "Fbar0_se", "mean_max_scaled", "mean_se", "m2_plus_hat",
                     "m2_se", "histogram_total"})
        CHECK(j.contains(key));
    CHECK(j["histogram_total"] == 10000);
    std::ostringstream os;
    write_histogram_csv(os, s);
    CHECK(os.str().rfind("bin_lo,bin_hi,count\n-inf,", 0) == 0);
}

} // TEST_SUITE
