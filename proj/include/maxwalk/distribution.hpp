#pragma once

#include "maxwalk/grid.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace maxwalk {

enum class DistKind { gaussian, uniform, laplace, mixture, spike };

std::string_view to_string(DistKind k);
DistKind parse_dist_kind(std::string_view name);

/// Increment law. After construction every spec has mean 0 and variance 1.
///
/// mixture params (optional): {w, m1, s1, m2, s2} for w*N(m1,s1^2)+(1-w)*N(m2,s2^2),
/// standardized on construction. Other kinds take no parameters.
class DistributionSpec {
public:
    explicit DistributionSpec(DistKind kind, std::vector<double> params = {});
    static DistributionSpec named(std::string_view name, std::vector<double> params = {});

    DistKind kind() const { return kind_; }
    std::string_view name() const { return to_string(kind_); }
    const std::vector<double>& params() const { return params_; }
    bool symmetric() const;
    bool bounded_density() const { return kind_ != DistKind::spike; }

    double pdf(double x) const;
    double cdf(double x) const;
    /// 1 - cdf(x), accurate in the right tail.
    double sf(double x) const;
    /// P(a < X <= b) computed without cancellation in either tail.
    double interval_mass(double a, double b) const;
    /// Inverse CDF, |x - F^{-1}(u)| <= 1e-10 for u in (0,1).
    double quantile(double u) const;

private:
    DistKind kind_;
    std::vector<double> params_;
    // standardized mixture components
    double w_ = 0, m1_ = 0, s1_ = 1, m2_ = 0, s2_ = 1;
};

/// Cell-averaged density: interval mass over each cell divided by the step.
GridDensity sample_density(const DistributionSpec& spec, const GridSpec& grid);

} // namespace maxwalk
