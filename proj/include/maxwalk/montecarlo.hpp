#pragma once

#include "maxwalk/distribution.hpp"
#include "maxwalk/walk.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace maxwalk {

/// Philox4x32-10 (Salmon et al., SC'11). Stateless: output is a pure function
/// of (counter, key), which is what makes chunked sampling reproducible.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;
    static Counter apply(Counter ctr, Key key);
};

/// Uniform in the open interval (0, 1) from 64 random bits (52 used).
double to_unit_open(std::uint32_t hi, std::uint32_t lo);

struct HistogramSpec {
    double lo = -3.0;
    double hi = 5.0;
    int bins = 160;
};

struct EmpiricalSummary {
    std::string spec;
    int n = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
    double Fbar0_hat = 0, Fbar0_se = 0;
    double mean_max_scaled = 0, mean_se = 0;
    double m2_plus_hat = 0, m2_se = 0;
    /// edges.size() == counts.size() + 1; first and last bins are open (-inf, inf)
    std::vector<double> edges;
    std::vector<long long> counts;
};

EmpiricalSummary simulate(const DistributionSpec& spec, int n, long long samples, std::uint64_t seed,
                          HistogramSpec hist = {});

struct EmpiricalComparison {
    double fbar_z = 0;
    double tv_hist = 0;
    double binning_allowance = 0;
    double mean_z = 0;
    double m2_z = 0;
};

EmpiricalComparison empirical_compare(const EmpiricalSummary& s, const WalkLaws& walk);

std::string summary_json(const EmpiricalSummary& s);
void write_histogram_csv(std::ostream& os, const EmpiricalSummary& s);

} // namespace maxwalk
