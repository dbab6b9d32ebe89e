#include "maxwalk/fft.hpp"

#include "maxwalk/error.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace maxwalk {

namespace {

struct PlanPair {
    fftw_plan fwd;
    fftw_plan inv;
};

// FFTW planning is not thread-safe; execution of a finished plan on new
// arrays is. Plans live for the process lifetime.
std::pair<fftw_plan, fftw_plan> plans_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, PlanPair> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return {it->second.fwd, it->second.inv};
    auto* r = fftw_alloc_real(n);
    auto* c = fftw_alloc_complex(n / 2 + 1);
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p{fftw_plan_dft_r2c_1d(len, r, c, flags), fftw_plan_dft_c2r_1d(len, c, r, flags | FFTW_DESTROY_INPUT)};
    fftw_free(r);
    fftw_free(c);
    if (!p.fwd || !p.inv) throw Error(Errc::invalid_argument, "FFTW could not plan a transform");
    cache.emplace(n, p);
    return {p.fwd, p.inv};
}

} // namespace

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

RealFft::RealFft(std::size_t n) : n_(n) {
    if (n < 2 || n % 2) throw Error(Errc::invalid_argument, "FFT length must be even");
    auto [f, i] = plans_for(n);
    fwd_ = f;
    inv_ = i;
}

void RealFft::forward(const double* in, cplx* out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_), const_cast<double*>(in),
                         reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(const cplx* in, double* out) const {
    // c2r destroys its input; work on a copy so callers keep theirs.
    std::vector<cplx> tmp(in, in + spectrum_size());
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_), reinterpret_cast<fftw_complex*>(tmp.data()), out);
}

SpectralGrid::SpectralGrid(const GridSpec& grid, std::size_t min_length)
    : grid_(grid), offset_(0), fft_(next_pow2(std::max<std::size_t>(2 * grid.count, min_length))) {
    auto off = grid.offset_cells();
    if (!off) throw Error(Errc::grid_mismatch, "spectral grid must be zero-aligned");
    offset_ = *off;
}

std::vector<cplx> SpectralGrid::forward(const GridDensity& f) const {
    if (!f.grid().same_as(grid_)) throw Error(Errc::grid_mismatch, "density not on the spectral grid");
    const long long len = static_cast<long long>(fft_.size());
    std::vector<double> buf(fft_.size(), 0.0);
    for (std::size_t i = 0; i < grid_.count; ++i) {
        long long c = (static_cast<long long>(i) + offset_) % len;
        if (c < 0) c += len;
        buf[static_cast<std::size_t>(c)] = f[i] * grid_.step;
    }
    std::vector<cplx> out(fft_.spectrum_size());
    fft_.forward(buf.data(), out.data());
    return out;
}

GridDensity SpectralGrid::inverse(const std::vector<cplx>& spec, double* dropped_l1) const {
    if (spec.size() != fft_.spectrum_size()) throw Error(Errc::invalid_argument, "spectrum length mismatch");
    const long long len = static_cast<long long>(fft_.size());
    std::vector<double> buf(fft_.size());
    fft_.inverse(spec.data(), buf.data());
    const double scale = 1.0 / (static_cast<double>(len) * grid_.step);
    std::vector<double> v(grid_.count);
    std::vector<char> used(fft_.size(), 0);
    for (std::size_t i = 0; i < grid_.count; ++i) {
        long long c = (static_cast<long long>(i) + offset_) % len;
        if (c < 0) c += len;
        v[i] = buf[static_cast<std::size_t>(c)] * scale;
        used[static_cast<std::size_t>(c)] = 1;
    }
    if (dropped_l1) {
        double d = 0;
        for (std::size_t c = 0; c < buf.size(); ++c)
            if (!used[c]) d += std::abs(buf[c]);
        *dropped_l1 = d / static_cast<double>(len);
    }
    return GridDensity(grid_, std::move(v));
}

} // namespace maxwalk
