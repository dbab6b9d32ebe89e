#include "maxwalk/decomposition.hpp"
#include "maxwalk/entropy.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/limits.hpp"

#include "../oracles/oracles.hpp"

#include <doctest.h>

#include <map>
#include <sstream>

using namespace maxwalk;

namespace {

const WalkLaws& walk64(const std::string& name) {
    static std::map<std::string, WalkLaws> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, WalkLaws(DistributionSpec::named(name), 64, GridSpec::for_walk(64, 1u << 14))).first;
    return it->second;
}

const DecompTable& table64(const std::string& name) {
    static std::map<std::string, DecompTable> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
        const WalkLaws& w = walk64(name);
        it = cache.emplace(name, DecompTable(binomial_split(w.p(), default_bound(w.p())), 64)).first;
    }
    return it->second;
}

const char* const all_specs[] = {"gaussian", "uniform", "laplace", "mixture", "spike"};

} // namespace

TEST_SUITE("limits") {

TEST_CASE("gaussian at n = 1 is exactly half-normal after conditioning") {
    const ConvergenceRow r = convergence_row(walk64("gaussian"), 1, 4.0);
    CHECK(std::abs(r.D_plus) <= 1e-6);
}

TEST_CASE("curve rows are internally consistent") {
    for (auto name : all_specs) {
        CAPTURE(name);
        for (const auto& r : convergence_curves(walk64(name), {1, 2, 4, 8, 16, 32, 64}, 4.0)) {
            CAPTURE(r.n);
            CHECK(std::abs(r.D - (1 - r.Fbar0) * r.D_plus - L(1 - r.Fbar0)) <= 1e-6);
            CHECK(r.tv <= std::sqrt(2 * std::max(r.D_plus, 0.0)) + r.Fbar0 + 1e-6);
            CHECK(r.pinsker_slack >= -1e-6);
            CHECK(r.D >= -std::exp(-1.0) - 1e-6);
        }
    }
}

TEST_CASE("endpoint comparison 8 -> 64") {
    for (auto name : all_specs) {
        CAPTURE(name);
        const auto rows = convergence_curves(walk64(name), {8, 64}, 4.0);
        CHECK(std::abs(rows[1].D) <= std::abs(rows[0].D)); // D < 0 here: Fbar0 mass sits outside (0, inf)
        CHECK(rows[1].D_plus <= rows[0].D_plus);
        CHECK(rows[1].tv <= rows[0].tv);
        CHECK(std::abs(1 - rows[1].m2_plus) <= std::abs(1 - rows[0].m2_plus));
    }
}

TEST_CASE("tail mass") {
    // oracle: int_4^inf x^2 phi_+ by quadrature, and its closed form 2(C phi(C) + Q(C))
    const double tail_oracle = oracle::gk([](double x) { return x * x * oracle::phi_plus(x); }, 4.0, 40.0);
    CHECK(tail_oracle == doctest::Approx(2 * (4 * oracle::phi(4.0) + 0.5 * std::erfc(4 / std::sqrt(2.0)))).epsilon(1e-10));
    for (auto name : all_specs) {
        CAPTURE(name);
        const WalkLaws& w = walk64(name);
        const ConvergenceRow r = convergence_row(w, 64, 0.0);
        CHECK(std::abs(tail_mass(w, 64, 0.0) - r.m2_plus) <= 1e-3);
        double prev = tail_mass(w, 64, 0.0);
        for (double C : {0.5, 1.0, 2.0, 4.0, 6.0}) {
            const double v = tail_mass(w, 64, C);
            CHECK(v <= prev);
            prev = v;
        }
        CHECK(tail_mass(w, 64, 4.0) <= tail_oracle + 0.01);
        for (int n : {32, 64}) CHECK(tail_mass(w, n, 4.0) <= 0.02);
    }
}

TEST_CASE("Aleshkyavichene residual") {
    CHECK_THROWS_AS(alesh_residual(walk64("spike"), 8), Error);
    for (auto name : {"gaussian", "uniform", "laplace", "mixture"}) {
        CAPTURE(name);
        const double r8 = alesh_residual(walk64(name), 8), r64 = alesh_residual(walk64(name), 64);
        CHECK(r8 >= 0);
        CHECK(r64 <= 0.5 * r8);
    }
    CHECK(alesh_residual(walk64("uniform"), 64) <= 0.05);
}

TEST_CASE("local residual part (a)") {
    for (auto name : all_specs) {
        CAPTURE(name);
        const double a8 = local_residual(table64(name), walk64(name), 8).part_a;
        const double a64 = local_residual(table64(name), walk64(name), 64).part_a;
        CHECK(a64 <= 0.5 * a8);
    }
    for (auto name : {"gaussian", "uniform", "laplace"}) {
        CAPTURE(name);
        CHECK(table64(name).rho() == 0.0);
        for (int n : {8, 64}) {
            const double a = local_residual(table64(name), walk64(name), n, Remainder::bounded_case).part_a;
            CHECK(std::abs(a - alesh_residual(walk64(name), n)) <= 1e-6);
        }
    }
}

TEST_CASE("spike part (b) envelope fitted at n = 8") {
    const auto& t = table64("spike");
    const auto& w = walk64("spike");
    const PartBEnvelope env = fit_part_b(local_residual(t, w, 8).part_b_profile, 8);
    CHECK(env.C1 >= 0);
    CHECK(env.C2 >= 0);
    CHECK(part_b_ratio(local_residual(t, w, 8).part_b_profile, 8, env) <= 1.0 + 1e-12);
    for (int n : {16, 32, 64}) CHECK(part_b_ratio(local_residual(t, w, n).part_b_profile, n, env) <= 1.2);
}

TEST_CASE("curves csv") {
    const WalkLaws& w = walk64("spike");
    std::vector<CurveRow> rows;
    for (const auto& r : convergence_curves(w, {1, 64}, 4.0)) rows.push_back({r, std::nullopt, 0.5});
    std::ostringstream a, b;
    write_curves_csv(a, rows);
    write_curves_csv(b, rows);
    CHECK(a.str() == b.str());
    CHECK(a.str().rfind("n,D,D_plus,tv,m2_plus,Fbar0,tail4,alesh,local_a\n1,", 0) == 0);
}

} // TEST_SUITE
