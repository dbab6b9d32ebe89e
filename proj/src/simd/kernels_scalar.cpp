#include "maxwalk/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace maxwalk::simd {

namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        out[i] = {ar * br - ai * bi, ai * br + ar * bi};
    }
}

void cmul_acc(double s, const cplx* a, const cplx* b, cplx* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag(), br = b[i].real(), bi = b[i].imag();
        acc[i] = {acc[i].real() + s * (ar * br - ai * bi), acc[i].imag() + s * (ai * br + ar * bi)};
    }
}

double sum(const double* x, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double sum_abs_diff(const double* x, const double* y, std::size_t n) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(x[i] - y[i]);
    return s;
}

void power_sums(const double* v, std::size_t n, double x0, double h, double out[3]) {
    double s0 = 0, s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = x0 + static_cast<double>(i) * h;
        const double vx = v[i] * x;
        s0 += v[i];
        s1 += vx;
        s2 += vx * x;
    }
    out[0] = s0;
    out[1] = s1;
    out[2] = s2;
}

void fourier_sums(const double* v, std::size_t n, double x0, double h, const double* t, std::size_t nt,
                  int order, cplx* out0, cplx* out1, cplx* out2) {
    for (std::size_t j = 0; j < nt; ++j) {
        const double wr = std::cos(t[j] * h), wi = std::sin(t[j] * h);
        double s0r = 0, s0i = 0, s1r = 0, s1i = 0, s2r = 0, s2i = 0;
        for (std::size_t b = 0; b < n; b += fourier_anchor_block) {
            const std::size_t e = std::min(n, b + fourier_anchor_block);
            const double xb = x0 + static_cast<double>(b) * h;
            double zr = std::cos(t[j] * xb), zi = std::sin(t[j] * xb);
            for (std::size_t i = b; i < e; ++i) {
                const double x = x0 + static_cast<double>(i) * h;
                const double c = v[i];
                s0r += c * zr;
                s0i += c * zi;
                if (order >= 1) {
                    const double cx = c * x;
                    s1r += cx * zr;
                    s1i += cx * zi;
                    if (order >= 2) {
                        s2r += cx * x * zr;
                        s2i += cx * x * zi;
                    }
                }
                const double nr = zr * wr - zi * wi;
                zi = zr * wi + zi * wr;
                zr = nr;
            }
        }
        out0[j] = {s0r, s0i};
        if (order >= 1) out1[j] = {s1r, s1i};
        if (order >= 2) out2[j] = {s2r, s2i};
    }
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable t{"scalar", axpy, cmul, cmul_acc, sum, sum_abs_diff, power_sums, fourier_sums};
    return t;
}

} // namespace maxwalk::simd
