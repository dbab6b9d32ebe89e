#include "maxwalk/distribution.hpp"

#include "maxwalk/density_ops.hpp"
#include "maxwalk/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace maxwalk {

namespace {

constexpr double sqrt3 = 1.7320508075688772;
constexpr double inv_sqrt2 = 0.70710678118654752;

// spike: p(x) = c |x|^{-1/2} on [-sqrt5, sqrt5], c = 1/(4 * 5^{1/4})
const double spike_root = std::pow(5.0, 0.25);
const double spike_c = 1.0 / (4.0 * spike_root);
const double spike_edge = std::sqrt(5.0);

// default mixture: skewed, already standardized
constexpr double mix_w = 0.3, mix_m1 = 1.05, mix_m2 = -0.45, mix_var = 0.5275;

double norm_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double norm_cdf(double z) { return 0.5 * std::erfc(-z * inv_sqrt2); }
double norm_sf(double z) { return 0.5 * std::erfc(z * inv_sqrt2); }

// Abramowitz & Stegun 26.2.23, |error| < 4.5e-4. Only a Newton start.
double norm_quantile_guess(double u) {
    const double p = std::min(u, 1.0 - u);
    const double t = std::sqrt(-2.0 * std::log(p));
    const double z = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                             (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
    return u < 0.5 ? -z : z;
}

} // namespace

std::string_view to_string(DistKind k) {
    switch (k) {
    case DistKind::gaussian: return "gaussian";
    case DistKind::uniform: return "uniform";
    case DistKind::laplace: return "laplace";
    case DistKind::mixture: return "mixture";
    case DistKind::spike: return "spike";
    }
    return "?";
}

DistKind parse_dist_kind(std::string_view name) {
    for (auto k : {DistKind::gaussian, DistKind::uniform, DistKind::laplace, DistKind::mixture, DistKind::spike})
        if (to_string(k) == name) return k;
    throw Error(Errc::unknown_spec, "unknown distribution spec '" + std::string(name) + "'");
}

DistributionSpec::DistributionSpec(DistKind kind, std::vector<double> params)
    : kind_(kind), params_(std::move(params)) {
    if (kind_ != DistKind::mixture) {
        if (!params_.empty())
            throw Error(Errc::invalid_argument, std::string(name()) + " takes no parameters");
        return;
    }
    if (params_.empty()) params_ = {mix_w, mix_m1, std::sqrt(mix_var), mix_m2, std::sqrt(mix_var)};
    if (params_.size() != 5)
        throw Error(Errc::invalid_argument, "mixture takes {w, m1, s1, m2, s2}");
    double w = params_[0], m1 = params_[1], s1 = params_[2], m2 = params_[3], s2 = params_[4];
    if (!(w > 0 && w < 1) || !(s1 > 0) || !(s2 > 0))
        throw Error(Errc::invalid_argument, "mixture needs 0 < w < 1 and positive scales");
    const double mu = w * m1 + (1 - w) * m2;
    const double var = w * (s1 * s1 + m1 * m1) + (1 - w) * (s2 * s2 + m2 * m2) - mu * mu;
    const double sd = std::sqrt(var);
    w_ = w;
    m1_ = (m1 - mu) / sd;
    s1_ = s1 / sd;
    m2_ = (m2 - mu) / sd;
    s2_ = s2 / sd;
}

DistributionSpec DistributionSpec::named(std::string_view name, std::vector<double> params) {
    return DistributionSpec(parse_dist_kind(name), std::move(params));
}

bool DistributionSpec::symmetric() const { return kind_ != DistKind::mixture; }

double DistributionSpec::pdf(double x) const {
    switch (kind_) {
    case DistKind::gaussian: return norm_pdf(x);
    case DistKind::uniform: return std::abs(x) <= sqrt3 ? 0.5 / sqrt3 : 0.0;
    case DistKind::laplace: return inv_sqrt2 * std::exp(-std::abs(x) * std::numbers::sqrt2);
    case DistKind::mixture:
        return w_ * norm_pdf((x - m1_) / s1_) / s1_ + (1 - w_) * norm_pdf((x - m2_) / s2_) / s2_;
    case DistKind::spike:
        if (x == 0.0) return std::numeric_limits<double>::infinity();
        return std::abs(x) <= spike_edge ? spike_c / std::sqrt(std::abs(x)) : 0.0;
    }
    return 0.0;
}

double DistributionSpec::cdf(double x) const {
    switch (kind_) {
    case DistKind::gaussian: return norm_cdf(x);
    case DistKind::uniform: return std::clamp((x + sqrt3) / (2 * sqrt3), 0.0, 1.0);
    case DistKind::laplace:
        return x < 0 ? 0.5 * std::exp(x * std::numbers::sqrt2) : 1.0 - 0.5 * std::exp(-x * std::numbers::sqrt2);
    case DistKind::mixture:
        return w_ * norm_cdf((x - m1_) / s1_) + (1 - w_) * norm_cdf((x - m2_) / s2_);
    case DistKind::spike: {
        const double a = std::min(std::abs(x), spike_edge);
        const double half = std::sqrt(a) / (2 * spike_root);
        return x < 0 ? 0.5 - half : 0.5 + half;
    }
    }
    return 0.0;
}

double DistributionSpec::sf(double x) const {
    switch (kind_) {
    case DistKind::gaussian: return norm_sf(x);
    case DistKind::laplace:
        return x > 0 ? 0.5 * std::exp(-x * std::numbers::sqrt2) : 1.0 - 0.5 * std::exp(x * std::numbers::sqrt2);
    case DistKind::mixture:
        return w_ * norm_sf((x - m1_) / s1_) + (1 - w_) * norm_sf((x - m2_) / s2_);
    case DistKind::uniform:
    case DistKind::spike: return cdf(-x); // symmetric
    }
    return 0.0;
}

double DistributionSpec::interval_mass(double a, double b) const {
    if (b <= a) return 0.0;
    if (a >= 0) return std::max(0.0, sf(a) - sf(b));
    if (b <= 0) return std::max(0.0, cdf(b) - cdf(a));
    return std::max(0.0, 1.0 - cdf(a) - sf(b));
}

double DistributionSpec::quantile(double u) const {
    if (!(u > 0 && u < 1)) throw Error(Errc::invalid_argument, "quantile needs u in (0,1)");
    switch (kind_) {
    case DistKind::uniform: return sqrt3 * (2 * u - 1);
    case DistKind::laplace:
        return u < 0.5 ? std::log(2 * u) * inv_sqrt2 : -std::log(2 * (1 - u)) * inv_sqrt2;
    case DistKind::spike: {
        const double r = 2 * spike_root * (u - 0.5);
        return u < 0.5 ? -r * r : r * r;
    }
    case DistKind::gaussian:
    case DistKind::mixture: break;
    }
    // Safeguarded Newton on whichever tail keeps the target representable.
    const bool upper = u > 0.5;
    const double target = upper ? 1.0 - u : u;
    auto resid = [&](double x) { return upper ? target - sf(x) : cdf(x) - target; };
    double lo = -40, hi = 40;
    double x = norm_quantile_guess(u);
    if (kind_ == DistKind::mixture) x = std::clamp(x, -30.0, 30.0);
    for (int it = 0; it < 200; ++it) {
        const double r = resid(x);
        if (r == 0) return x;
        if (r > 0) hi = x; else lo = x;
        const double d = pdf(x);
        double nx = d > 0 ? x - r / d : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) <= 1e-13 * (1 + std::abs(x))) return nx;
        x = nx;
    }
    return x;
}

GridDensity sample_density(const DistributionSpec& spec, const GridSpec& grid) {
    grid.validate();
    if (grid.lower_edge() > -8.0 || grid.upper_edge() < 8.0) {
        std::ostringstream msg;
        msg << "grid window [" << grid.lower_edge() << ", " << grid.upper_edge()
            << "] is too small: sampling needs at least [-8, 8]";
        throw Error(Errc::window_too_small, msg.str());
    }
    std::vector<double> v(grid.count);
    const double h = grid.step;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double a = grid.x(i) - 0.5 * h;
        v[i] = spec.interval_mass(a, a + h) / h;
    }
    GridDensity f(grid, std::move(v));
    const double m = f.mass();
    const double mean = moment(f, 1) / m;
    const double var = moment(f, 2) / m - mean * mean;
    if (std::abs(m - 1) > default_mass_tol || std::abs(mean) > 1e-6 || std::abs(var - 1) > 1e-4) {
        std::ostringstream msg;
        msg << "sampled " << spec.name() << " density fails normalization (mass " << m << ", mean " << mean
            << ", variance " << var << "); refine the grid";
        throw Error(Errc::window_too_small, msg.str());
    }
    return f;
}

} // namespace maxwalk
