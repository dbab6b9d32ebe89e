#pragma once

#include "maxwalk/grid.hpp"
#include "maxwalk/reference.hpp"

#include <iosfwd>
#include <limits>
#include <vector>

namespace maxwalk {

/// x log x, with L(0) = 0.
double L(double x);

struct EntropyOptions {
    double mass_tol = default_mass_tol;
    /// Values in [-negative_floor, 0) are read as 0; below that is an error.
    double negative_floor = 1e-12;
    /// Cells at or below this level contribute nothing.
    double zero_level = 1e-300;
};

inline constexpr double infinite_entropy = std::numeric_limits<double>::infinity();

/// D(f | ref) = integral over the reference support of f (log f - log ref).
///
/// Cells outside the support must carry no more than mass_tol, otherwise the
/// divergence is infinite and infinite_entropy is returned. When f vanishes on
/// one side of 0, the zero cell's mass is taken to sit on the other side only
/// (the convention produced by restrict()).
double relative_entropy(const GridDensity& f, const ReferenceLaw& ref, const EntropyOptions& opt = {});

/// D of f conditioned on (0, inf) against a half-line reference.
double conditional_positive_entropy(const GridDensity& f, const ReferenceLaw& ref, const EntropyOptions& opt = {});

double differential_entropy(const GridDensity& f);

enum class GaussianSide { full, positive };
/// -h + 1/2 log(2 pi tau^2) + sigma^2 / (2 tau^2); the positive side uses pi/2.
double gaussian_relent_closed_form(double h_x, double sigma2, double tau, GaussianSide side);

struct EntropyReport {
    double D = 0;
    double mass_of_argument = 0;
    double tv = 0;
    double pinsker_slack = 0;
};

EntropyReport pinsker_check(const GridDensity& f, const ReferenceLaw& ref, const EntropyOptions& opt = {});

/// One row of the entropy table: D against the half-line reference, D_plus for
/// the law conditioned positive, and its Pinsker report.
struct EntropyRow {
    int n = 0;
    double D = 0;
    double D_plus = 0;
    double tv = 0;
    double pinsker_slack = 0;
    double mass = 0;
};
void write_entropy_rows(std::ostream& os, const std::vector<EntropyRow>& rows);

} // namespace maxwalk
