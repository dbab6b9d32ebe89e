#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library: closed forms, Boost quadrature, or plain std::random.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

template <class F>
double gk(F f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

/// Endpoint singularities allowed.
template <class F>
double ts(F f, double a, double b) {
    boost::math::quadrature::tanh_sinh<double> q;
    return q.integrate(f, a, b);
}

inline double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * pi); }
inline double phi_plus(double x) { return x > 0 ? 2 * phi(x) : 0.0; }

/// |x|^{-1/2} / (4 * 5^{1/4}) on [-sqrt 5, sqrt 5]
inline double spike_pdf(double x) {
    const double a = std::abs(x);
    return (a > 0 && a <= std::sqrt(5.0)) ? 1.0 / (4.0 * std::pow(5.0, 0.25) * std::sqrt(a)) : 0.0;
}

inline double laplace_pdf(double x) {
    const double b = 1.0 / std::sqrt(2.0);
    return std::exp(-std::abs(x) / b) / (2 * b);
}

/// P(max_{1<=k<=n} S_k <= 0) for n = 1..n_max, gaussian steps, by simulation.
inline std::vector<double> fbar0_monte_carlo(int n_max, long long paths, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    std::vector<long long> hits(n_max + 1, 0);
    for (long long p = 0; p < paths; ++p) {
        double s = 0;
        bool nonpos = true;
        for (int k = 1; k <= n_max; ++k) {
            s += z(rng);
            nonpos = nonpos && s <= 0;
            hits[k] += nonpos;
        }
    }
    std::vector<double> out(n_max + 1, 1.0);
    for (int k = 1; k <= n_max; ++k) out[k] = static_cast<double>(hits[k]) / static_cast<double>(paths);
    return out;
}

/// C(2n, n) / 4^n by the product formula prod (2k-1)/(2k).
inline double central_binomial_ratio(int n) {
    double r = 1;
    for (int k = 1; k <= n; ++k) r *= (2.0 * k - 1) / (2.0 * k);
    return r;
}

} // namespace oracle
