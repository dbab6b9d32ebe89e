#pragma once

#include "maxwalk/density_ops.hpp"
#include "maxwalk/distribution.hpp"
#include "maxwalk/grid.hpp"

#include <iosfwd>
#include <vector>

namespace maxwalk {

struct WalkOptions {
    ConvMode mode = ConvMode::fast;
    double mass_tol = default_mass_tol;
};

/// Laws of S_k and of the running maximum for k = 1..n_max.
/// Index accessors take k directly; k = 0 is only meaningful for Fbar0 (= 1).
class WalkLaws {
public:
    WalkLaws(DistributionSpec spec, int n_max, const GridSpec& grid, WalkOptions opt = {});

    const DistributionSpec& spec() const { return spec_; }
    int n_max() const { return n_max_; }
    const GridSpec& grid() const { return grid_; }
    const WalkOptions& options() const { return opt_; }

    const GridDensity& p() const { return p_k_.front(); }
    const GridDensity& p(int k) const;
    const GridDensity& pbar(int k) const;
    /// P(max_k <= 0); Fbar0(0) = 1.
    double Fbar0(int k) const;
    double abar(int k) const;
    double bbar(int k) const;
    /// Negative part of pbar_k, used by the Nagaev kernels.
    const GridDensity& pbar_negative(int k) const;

private:
    void check_k(int k, int lo) const;

    DistributionSpec spec_;
    int n_max_;
    GridSpec grid_;
    WalkOptions opt_;
    std::vector<GridDensity> p_k_, pbar_k_, neg_k_;
    std::vector<double> fbar0_, abar_, bbar_;
};

WalkLaws compute_walk(const DistributionSpec& spec, int n_max, const GridSpec& grid, WalkOptions opt = {});

/// G_k = atom * delta_0 - negative_density. k = 0 is the unit atom.
struct NagaevKernel {
    int index = 0;
    double atom_at_zero = 1.0;
    GridDensity negative_density;
};

NagaevKernel nagaev_kernel(const WalkLaws& walk, int k);
/// f * G_k, exact in the atom.
GridDensity apply_kernel(const GridDensity& f, const NagaevKernel& g, ConvMode mode = ConvMode::fast);

GridDensity nagaev_density(const WalkLaws& walk, int n);
HalfLineLaw spitzer_positive_law(const WalkLaws& walk, int n);
double second_moment_spitzer(const WalkLaws& walk, int n);
/// C(2n, n) / 4^n, exact rational arithmetic rounded once.
double sparre_andersen(int n);
/// pbar_n - Fbar0(n-1) p on (0, inf).
GridDensity opn_split(const WalkLaws& walk, int n);

void write_scalar_table(std::ostream& os, const WalkLaws& walk);

} // namespace maxwalk
