#include "maxwalk/reference.hpp"

#include "maxwalk/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace maxwalk {

namespace {
constexpr double inv_sqrt2 = 0.70710678118654752;

// P(a < N(0,1) <= b) without cancellation in either tail
double std_normal_mass(double a, double b) {
    if (b <= a) return 0.0;
    if (a >= 0) return 0.5 * (std::erfc(a * inv_sqrt2) - std::erfc(b * inv_sqrt2));
    if (b <= 0) return 0.5 * (std::erfc(-b * inv_sqrt2) - std::erfc(-a * inv_sqrt2));
    return 1.0 - 0.5 * std::erfc(-a * inv_sqrt2) - 0.5 * std::erfc(b * inv_sqrt2);
}
} // namespace

ReferenceLaw::ReferenceLaw(Kind k, double mu, double var, bool positive)
    : kind_(k), mu_(mu), var_(var), sd_(std::sqrt(var)), positive_(positive), log_norm_(0.0) {
    if (!(var > 0) || !std::isfinite(var) || !std::isfinite(mu))
        throw Error(Errc::invalid_argument, "reference law needs finite mean and positive variance");
    if (positive_) log_norm_ = std::log(0.5 * std::erfc(-mu_ / sd_ * inv_sqrt2));
}

ReferenceLaw ReferenceLaw::half_normal() { return {Kind::half_normal, 0.0, 1.0, true}; }
ReferenceLaw ReferenceLaw::half_normal_scaled(double n) { return {Kind::half_normal_scaled, 0.0, n, true}; }
ReferenceLaw ReferenceLaw::gaussian(double mu, double var) { return {Kind::gaussian, mu, var, false}; }
ReferenceLaw ReferenceLaw::gaussian_positive_restriction(double mu, double var) {
    return {Kind::gaussian_positive_restriction, mu, var, true};
}

double ReferenceLaw::log_density(double x) const {
    if (positive_ && x < 0) return -std::numeric_limits<double>::infinity();
    const double z = (x - mu_) / sd_;
    return -0.5 * z * z - std::log(sd_) - 0.5 * std::log(2 * std::numbers::pi) - log_norm_;
}

double ReferenceLaw::density(double x) const { return std::exp(log_density(x)); }

double ReferenceLaw::interval_mass(double a, double b) const {
    if (positive_) a = std::max(a, 0.0);
    if (b <= a) return 0.0;
    return std_normal_mass((a - mu_) / sd_, (b - mu_) / sd_) / std::exp(log_norm_);
}

std::string ReferenceLaw::describe() const {
    std::ostringstream s;
    s << (positive_ ? "N+(" : "N(") << mu_ << ", " << var_ << ")";
    return s.str();
}

GridDensity sample_reference(const ReferenceLaw& ref, const GridSpec& grid) {
    std::vector<double> v(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double a = grid.x(i) - 0.5 * grid.step;
        v[i] = ref.interval_mass(a, a + grid.step) / grid.step;
    }
    return GridDensity(grid, std::move(v));
}

} // namespace maxwalk
