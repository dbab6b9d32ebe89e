#include "maxwalk/simd/kernels.hpp"

#include <doctest.h>

#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

using namespace maxwalk::simd;

namespace {

std::vector<double> randv(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

std::vector<cplx> randc(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<cplx> v(n);
    for (auto& x : v) x = {u(rng), u(rng)};
    return v;
}

// lengths that hit the vector body, the tail and the anchor block boundary
const std::size_t lengths[] = {0, 1, 3, 4, 7, 17, 255, 256, 257, 1000, 4099};

} // namespace

TEST_SUITE("simd") {

TEST_CASE("dispatch") {
    CHECK(scalar_kernels().name == "scalar");
    const char* env = std::getenv("MAXWALK_SIMD");
    const bool forced = env && std::string_view(env) == "scalar";
    const bool vec = !forced && cpu_has_avx2() && avx2_kernels();
    CHECK(active().name == (vec ? "avx2" : "scalar"));
}

TEST_CASE("AVX2 kernels match the scalar reference") {
    const KernelTable* v = avx2_kernels();
    if (!v || !cpu_has_avx2()) {
        MESSAGE("AVX2 unavailable, equivalence skipped");
        return;
    }
    const KernelTable& s = scalar_kernels();
    std::mt19937_64 rng(99);
    for (std::size_t n : lengths) {
        CAPTURE(n);
        const auto x = randv(n, rng), y0 = randv(n, rng);
        auto ys = y0, yv = y0;
        s.axpy(0.37, x.data(), ys.data(), n);
        v->axpy(0.37, x.data(), yv.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ys[i] - yv[i]) <= 1e-15);

        // reassociated sums: compare relative to the absolute sum
        const double sa = s.sum_abs_diff(x.data(), y0.data(), n);
        CHECK(std::abs(s.sum(x.data(), n) - v->sum(x.data(), n)) <= 1e-14 * (1 + sa));
        CHECK(std::abs(sa - v->sum_abs_diff(x.data(), y0.data(), n)) <= 1e-14 * (1 + sa));

        double ps[3], pv[3];
        s.power_sums(x.data(), n, -3.5, 0.01, ps);
        v->power_sums(x.data(), n, -3.5, 0.01, pv);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(ps[k] - pv[k]) <= 1e-11 * (1 + std::abs(ps[k])));

        const auto a = randc(n, rng), b = randc(n, rng), acc0 = randc(n, rng);
        std::vector<cplx> os(n), ov(n);
        s.cmul(a.data(), b.data(), os.data(), n);
        v->cmul(a.data(), b.data(), ov.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(os[i] - ov[i]) <= 1e-15);
        auto as = acc0, av = acc0;
        s.cmul_acc(-1.25, a.data(), b.data(), as.data(), n);
        v->cmul_acc(-1.25, a.data(), b.data(), av.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(as[i] - av[i]) <= 1e-14);
    }
}

TEST_CASE("AVX2 Fourier sums match the scalar reference") {
    const KernelTable* v = avx2_kernels();
    if (!v || !cpu_has_avx2()) {
        MESSAGE("AVX2 unavailable, equivalence skipped");
        return;
    }
    const KernelTable& s = scalar_kernels();
    std::mt19937_64 rng(7);
    const std::vector<double> t = {-5.0, -1.3, 0.0, 0.01, 2.5, 4.99, 7.0};
    const std::size_t nt = t.size();
    for (std::size_t n : lengths) {
        CAPTURE(n);
        const auto x = randv(n, rng);
        const double x0 = -0.5 * static_cast<double>(n) * 0.01;
        for (int order : {0, 1, 2}) {
            CAPTURE(order);
            std::vector<cplx> s0(nt), s1(nt), s2(nt), v0(nt), v1(nt), v2(nt);
            s.fourier_sums(x.data(), n, x0, 0.01, t.data(), nt, order, s0.data(), s1.data(), s2.data());
            v->fourier_sums(x.data(), n, x0, 0.01, t.data(), nt, order, v0.data(), v1.data(), v2.data());
            const double scale = 1 + static_cast<double>(n);
            for (std::size_t j = 0; j < nt; ++j) {
                CHECK(std::abs(s0[j] - v0[j]) <= 1e-12 * scale);
                if (order >= 1) CHECK(std::abs(s1[j] - v1[j]) <= 1e-12 * scale * scale);
                if (order >= 2) CHECK(std::abs(s2[j] - v2[j]) <= 1e-12 * scale * scale * scale);
            }
        }
    }
}

} // TEST_SUITE
