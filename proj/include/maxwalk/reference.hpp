#pragma once

#include "maxwalk/grid.hpp"

#include <string>

namespace maxwalk {

/// Analytic reference density: N(mu, var) on the line, or the same Gaussian
/// restricted to (0, inf) and renormalized.
class ReferenceLaw {
public:
    enum class Kind { half_normal, half_normal_scaled, gaussian, gaussian_positive_restriction };

    /// phi_+ (x) = sqrt(2/pi) exp(-x^2/2) on (0, inf)
    static ReferenceLaw half_normal();
    /// phi_{n,+}: half-normal with second moment n
    static ReferenceLaw half_normal_scaled(double n);
    static ReferenceLaw gaussian(double mu, double var);
    static ReferenceLaw gaussian_positive_restriction(double mu, double var);

    Kind kind() const { return kind_; }
    bool half_line() const { return positive_; }
    double mu() const { return mu_; }
    double var() const { return var_; }

    /// -inf outside the support.
    double log_density(double x) const;
    double density(double x) const;
    /// Mass of (a, b] under the law.
    double interval_mass(double a, double b) const;
    std::string describe() const;

private:
    ReferenceLaw(Kind k, double mu, double var, bool positive);
    Kind kind_;
    double mu_, var_, sd_;
    bool positive_;
    double log_norm_; // log of P(N(mu,var) > 0) when restricted, else 0
};

/// Cell averages of the reference on the grid.
GridDensity sample_reference(const ReferenceLaw& ref, const GridSpec& grid);

} // namespace maxwalk
