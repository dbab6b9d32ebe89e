#pragma once

#include "maxwalk/decomposition.hpp"
#include "maxwalk/walk.hpp"

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace maxwalk {

struct ConvergenceRow {
    int n = 0;
    double D = 0;       // D(pbar_n* | phi_+) over (0, inf)
    double D_plus = 0;  // law conditioned positive vs phi_+
    double tv = 0;      // d_TV(pbar_n*, phi_+)
    double m2_plus = 0; // E (max^+ / sqrt n)^2
    double Fbar0 = 0;
    double tail_mass_C = 0;
    double pinsker_D = 0, pinsker_tv = 0, pinsker_slack = 0; // conditioned law vs phi_+
};

ConvergenceRow convergence_row(const WalkLaws& walk, int n, double C);
std::vector<ConvergenceRow> convergence_curves(const WalkLaws& walk, const std::vector<int>& n_list, double C);
std::vector<ConvergenceRow> convergence_curves(const DistributionSpec& spec, const std::vector<int>& n_list, double C,
                                               std::size_t grid_points = 1u << 14);

/// int_C^inf x^2 pbar_n*(x) dx on the rescaled grid.
double tail_mass(const WalkLaws& walk, int n, double C);

/// sup_{0<x<8} x |pbar_n* - phi_+ - Fbar_{n-1}(0) sqrt(n) p(sqrt(n) x)|. Bounded densities only.
double alesh_residual(const WalkLaws& walk, int n);

enum class Remainder {
    general,     // r_n from the j = 1, 2 binomial terms
    bounded_case // Fbar_{n-1}(0) sqrt(n) p(sqrt(n) x), the rho = 0 reading
};

struct LocalResidual {
    double part_a = 0;
    /// (x, |qbar_n* - phi_+ - r_n|(x)) for 0 < x < 1/e
    std::vector<std::pair<double, double>> part_b_profile;
};

LocalResidual local_residual(const DecompTable& table, const WalkLaws& walk, int n,
                             Remainder remainder = Remainder::general);

/// C1 min(log n, 1/(sqrt(n) x)) + C2 log(1/x)
struct PartBEnvelope {
    double C1 = 0, C2 = 0;
    double operator()(int n, double x) const;
};
/// Smallest-area envelope covering the profile at n0.
PartBEnvelope fit_part_b(const std::vector<std::pair<double, double>>& profile, int n0);
/// max over the profile of residual / envelope.
double part_b_ratio(const std::vector<std::pair<double, double>>& profile, int n, const PartBEnvelope& env);

struct CurveRow {
    ConvergenceRow conv;
    std::optional<double> alesh;
    double local_a = 0;
};
void write_curves_csv(std::ostream& os, const std::vector<CurveRow>& rows);

} // namespace maxwalk
