#pragma once

#include "maxwalk/grid.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace maxwalk {

using cplx = std::complex<double>;

/// Real-to-complex FFT of fixed even length. Plans are cached process-wide;
/// execution is thread-safe.
class RealFft {
public:
    explicit RealFft(std::size_t n);
    std::size_t size() const { return n_; }
    std::size_t spectrum_size() const { return n_ / 2 + 1; }

    void forward(const double* in, cplx* out) const;
    /// Unnormalized inverse: result is n times the original signal.
    void inverse(const cplx* in, double* out) const;

private:
    std::size_t n_;
    void* fwd_;
    void* inv_;
};

std::size_t next_pow2(std::size_t n);

/// Spectra of zero-aligned densities on a common grid, indexed cyclically by
/// x/step so that products correspond to convolution on the same lattice.
class SpectralGrid {
public:
    explicit SpectralGrid(const GridSpec& grid, std::size_t min_length = 0);

    const GridSpec& grid() const { return grid_; }
    std::size_t length() const { return fft_.size(); }
    std::size_t bins() const { return fft_.spectrum_size(); }

    std::vector<cplx> forward(const GridDensity& f) const;
    /// Back to the grid window. Mass aliased outside the window is reported
    /// through dropped_l1 when requested.
    GridDensity inverse(const std::vector<cplx>& spec, double* dropped_l1 = nullptr) const;

private:
    GridSpec grid_;
    long long offset_;
    RealFft fft_;
};

} // namespace maxwalk
