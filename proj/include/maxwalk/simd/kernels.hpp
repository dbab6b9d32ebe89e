#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

namespace maxwalk::simd {

using cplx = std::complex<double>;

/// Inner loops that dominate run time. Every entry has a scalar reference
/// implementation; the AVX2 table must agree with it to rounding.
struct KernelTable {
    std::string_view name;

    /// y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    /// out[i] = a[i] * b[i]
    void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    /// acc[i] += s * a[i] * b[i]
    void (*cmul_acc)(double s, const cplx* a, const cplx* b, cplx* acc, std::size_t n);
    /// sum of x
    double (*sum)(const double* x, std::size_t n);
    /// sum of |x - y|
    double (*sum_abs_diff)(const double* x, const double* y, std::size_t n);
    /// out[k] = sum_i v[i] * x_i^k for k = 0,1,2 with x_i = x0 + i*h
    void (*power_sums)(const double* v, std::size_t n, double x0, double h, double out[3]);
    /// For each t_j: out_k[j] = sum_i v[i] x_i^k exp(i t_j x_i), k = 0..order.
    /// x_i = x0 + i*h. Outputs are overwritten.
    void (*fourier_sums)(const double* v, std::size_t n, double x0, double h,
                         const double* t, std::size_t nt, int order,
                         cplx* out0, cplx* out1, cplx* out2);
};

const KernelTable& scalar_kernels();
/// nullptr when the binary was built without the AVX2 translation unit.
const KernelTable* avx2_kernels();
/// True if the running CPU supports AVX2 and FMA.
bool cpu_has_avx2();

/// Table chosen at first use: AVX2 when available, unless MAXWALK_SIMD=scalar.
const KernelTable& active();

/// Cells between exact re-anchoring of the e^{itx} recurrence.
inline constexpr std::size_t fourier_anchor_block = 256;

} // namespace maxwalk::simd
