// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "maxwalk/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace maxwalk::simd {

namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

// two complex numbers per register: [re0 im0 re1 im1]
inline __m256d cmul2(__m256d a, __m256d b) {
    const __m256d br = _mm256_movedup_pd(b);
    const __m256d bi = _mm256_permute_pd(b, 0xF);
    const __m256d as = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, br, _mm256_mul_pd(as, bi));
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    auto* pa = reinterpret_cast<const double*>(a);
    auto* pb = reinterpret_cast<const double*>(b);
    auto* po = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(po + 2 * i, cmul2(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i)));
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        out[i] = {std::fma(ar, br, -(ai * bi)), std::fma(ai, br, ar * bi)};
    }
}

void cmul_acc(double s, const cplx* a, const cplx* b, cplx* acc, std::size_t n) {
    auto* pa = reinterpret_cast<const double*>(a);
    auto* pb = reinterpret_cast<const double*>(b);
    auto* pc = reinterpret_cast<double*>(acc);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d p = cmul2(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
        _mm256_storeu_pd(pc + 2 * i, _mm256_fmadd_pd(vs, p, _mm256_loadu_pd(pc + 2 * i)));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        const double pr = std::fma(ar, br, -(ai * bi)), pi = std::fma(ai, br, ar * bi);
        acc[i] = {std::fma(s, pr, acc[i].real()), std::fma(s, pi, acc[i].imag())};
    }
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum(const double* x, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
        a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
    }
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) s += x[i];
    return s;
}

double sum_abs_diff(const double* x, const double* y, std::size_t n) {
    const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));
    __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, _mm256_and_pd(mask, _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i))));
        a1 = _mm256_add_pd(a1, _mm256_and_pd(mask, _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4))));
    }
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) s += std::abs(x[i] - y[i]);
    return s;
}

void power_sums(const double* v, std::size_t n, double x0, double h, double out[3]) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd(), s2 = _mm256_setzero_pd();
    const __m256d vx0 = _mm256_set1_pd(x0), vh = _mm256_set1_pd(h);
    __m256d idx = _mm256_set_pd(3, 2, 1, 0);
    const __m256d four = _mm256_set1_pd(4);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_fmadd_pd(idx, vh, vx0);
        const __m256d c = _mm256_loadu_pd(v + i);
        const __m256d cx = _mm256_mul_pd(c, x);
        s0 = _mm256_add_pd(s0, c);
        s1 = _mm256_add_pd(s1, cx);
        s2 = _mm256_fmadd_pd(cx, x, s2);
        idx = _mm256_add_pd(idx, four);
    }
    double r0 = hsum(s0), r1 = hsum(s1), r2 = hsum(s2);
    for (; i < n; ++i) {
        const double x = std::fma(static_cast<double>(i), h, x0);
        const double cx = v[i] * x;
        r0 += v[i];
        r1 += cx;
        r2 = std::fma(cx, x, r2);
    }
    out[0] = r0;
    out[1] = r1;
    out[2] = r2;
}

// Four t values per register; e^{itx} advanced by a rotation recurrence and
// re-anchored with exact sin/cos every fourier_anchor_block cells.
void fourier_sums(const double* v, std::size_t n, double x0, double h, const double* t, std::size_t nt,
                  int order, cplx* out0, cplx* out1, cplx* out2) {
    for (std::size_t j = 0; j < nt; j += 4) {
        const std::size_t lanes = std::min<std::size_t>(4, nt - j);
        alignas(32) double tl[4] = {0, 0, 0, 0};
        for (std::size_t l = 0; l < lanes; ++l) tl[l] = t[j + l];
        alignas(32) double wr_[4], wi_[4];
        for (int l = 0; l < 4; ++l) {
            wr_[l] = std::cos(tl[l] * h);
            wi_[l] = std::sin(tl[l] * h);
        }
        const __m256d wr = _mm256_load_pd(wr_), wi = _mm256_load_pd(wi_);
        __m256d s0r = _mm256_setzero_pd(), s0i = _mm256_setzero_pd();
        __m256d s1r = _mm256_setzero_pd(), s1i = _mm256_setzero_pd();
        __m256d s2r = _mm256_setzero_pd(), s2i = _mm256_setzero_pd();
        for (std::size_t b = 0; b < n; b += fourier_anchor_block) {
            const std::size_t e = std::min(n, b + fourier_anchor_block);
            const double xb = x0 + static_cast<double>(b) * h;
            alignas(32) double zr_[4], zi_[4];
            for (int l = 0; l < 4; ++l) {
                zr_[l] = std::cos(tl[l] * xb);
                zi_[l] = std::sin(tl[l] * xb);
            }
            __m256d zr = _mm256_load_pd(zr_), zi = _mm256_load_pd(zi_);
            for (std::size_t i = b; i < e; ++i) {
                const double x = x0 + static_cast<double>(i) * h;
                const __m256d c = _mm256_set1_pd(v[i]);
                s0r = _mm256_fmadd_pd(c, zr, s0r);
                s0i = _mm256_fmadd_pd(c, zi, s0i);
                if (order >= 1) {
                    const __m256d cx = _mm256_set1_pd(v[i] * x);
                    s1r = _mm256_fmadd_pd(cx, zr, s1r);
                    s1i = _mm256_fmadd_pd(cx, zi, s1i);
                    if (order >= 2) {
                        const __m256d cxx = _mm256_set1_pd(v[i] * x * x);
                        s2r = _mm256_fmadd_pd(cxx, zr, s2r);
                        s2i = _mm256_fmadd_pd(cxx, zi, s2i);
                    }
                }
                const __m256d nr = _mm256_fmsub_pd(zr, wr, _mm256_mul_pd(zi, wi));
                zi = _mm256_fmadd_pd(zr, wi, _mm256_mul_pd(zi, wr));
                zr = nr;
            }
        }
        alignas(32) double a[4], bb[4];
        _mm256_store_pd(a, s0r);
        _mm256_store_pd(bb, s0i);
        for (std::size_t l = 0; l < lanes; ++l) out0[j + l] = {a[l], bb[l]};
        if (order >= 1) {
            _mm256_store_pd(a, s1r);
            _mm256_store_pd(bb, s1i);
            for (std::size_t l = 0; l < lanes; ++l) out1[j + l] = {a[l], bb[l]};
        }
        if (order >= 2) {
            _mm256_store_pd(a, s2r);
            _mm256_store_pd(bb, s2i);
            for (std::size_t l = 0; l < lanes; ++l) out2[j + l] = {a[l], bb[l]};
        }
    }
}

} // namespace

const KernelTable* avx2_kernels() {
    static const KernelTable t{"avx2", axpy, cmul, cmul_acc, sum, sum_abs_diff, power_sums, fourier_sums};
    return &t;
}

} // namespace maxwalk::simd
