#include "maxwalk/montecarlo.hpp"

#include "maxwalk/density_ops.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/io.hpp"
#include "maxwalk/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace maxwalk {

Philox4x32::Counter Philox4x32::apply(Counter c, Key k) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += W0;
        k[1] += W1;
    }
    return c;
}

double to_unit_open(std::uint32_t hi, std::uint32_t lo) {
    // 52 bits so the largest value, 1 - 2^-53, is still representable below 1
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 12;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-52;
}

namespace {

constexpr long long chunk_size = 1 << 14;

struct Partial {
    long long nonpos = 0;
    double sum = 0, sum_sq = 0;   // of M / sqrt(n)
    double sum2 = 0, sum2_sq = 0; // of (M^+)^2 / n
    std::vector<long long> counts;
};

std::size_t bin_of(double x, const HistogramSpec& h) {
    if (x < h.lo) return 0;
    if (x >= h.hi) return static_cast<std::size_t>(h.bins) + 1;
    const auto b = static_cast<std::size_t>((x - h.lo) / (h.hi - h.lo) * h.bins);
    return 1 + std::min<std::size_t>(b, static_cast<std::size_t>(h.bins) - 1);
}

} // namespace

EmpiricalSummary simulate(const DistributionSpec& spec, int n, long long samples, std::uint64_t seed,
                          HistogramSpec hist) {
    if (n < 1) throw Error(Errc::invalid_argument, "simulate needs n >= 1");
    if (samples < 10000) throw Error(Errc::invalid_argument, "simulate needs at least 1e4 samples");
    if (hist.bins < 1 || !(hist.hi > hist.lo)) throw Error(Errc::invalid_argument, "bad histogram layout");
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const double rn = std::sqrt(static_cast<double>(n));
    const long long chunks = (samples + chunk_size - 1) / chunk_size;
    std::vector<Partial> parts(static_cast<std::size_t>(chunks));

    parallel_for(static_cast<std::size_t>(chunks), 1, [&](std::size_t c0, std::size_t c1) {
        for (std::size_t c = c0; c < c1; ++c) {
            Partial& P = parts[c];
            P.counts.assign(static_cast<std::size_t>(hist.bins) + 2, 0);
            const long long s0 = static_cast<long long>(c) * chunk_size;
            const long long s1 = std::min(samples, s0 + chunk_size);
            for (long long s = s0; s < s1; ++s) {
                double S = 0, M = -std::numeric_limits<double>::infinity();
                for (int k = 0; k < n; k += 2) {
                    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                                                  static_cast<std::uint32_t>(k / 2), 0u};
                    const auto r = Philox4x32::apply(ctr, key);
                    S += spec.quantile(to_unit_open(r[0], r[1]));
                    M = std::max(M, S);
                    if (k + 1 < n) {
                        S += spec.quantile(to_unit_open(r[2], r[3]));
                        M = std::max(M, S);
                    }
                }
                const double m = M / rn;
                const double m2 = M > 0 ? m * m : 0.0;
                P.nonpos += M <= 0;
                P.sum += m;
                P.sum_sq += m * m;
                P.sum2 += m2;
                P.sum2_sq += m2 * m2;
                ++P.counts[bin_of(m, hist)];
            }
        }
    });

    EmpiricalSummary out;
    out.spec = std::string(spec.name());
    out.n = n;
    out.samples = samples;
    out.seed = seed;
    out.counts.assign(static_cast<std::size_t>(hist.bins) + 2, 0);
    long long nonpos = 0;
    double sum = 0, sum_sq = 0, sum2 = 0, sum2_sq = 0;
    for (const auto& P : parts) { // fixed order: result independent of scheduling
        nonpos += P.nonpos;
        sum += P.sum;
        sum_sq += P.sum_sq;
        sum2 += P.sum2;
        sum2_sq += P.sum2_sq;
        for (std::size_t b = 0; b < P.counts.size(); ++b) out.counts[b] += P.counts[b];
    }
    const double N = static_cast<double>(samples);
    out.Fbar0_hat = nonpos / N;
    out.Fbar0_se = std::sqrt(out.Fbar0_hat * (1 - out.Fbar0_hat) / N);
    out.mean_max_scaled = sum / N;
    out.mean_se = std::sqrt(std::max(sum_sq / N - out.mean_max_scaled * out.mean_max_scaled, 0.0) / N);
    out.m2_plus_hat = sum2 / N;
    out.m2_se = std::sqrt(std::max(sum2_sq / N - out.m2_plus_hat * out.m2_plus_hat, 0.0) / N);
    out.edges.push_back(-std::numeric_limits<double>::infinity());
    for (int b = 0; b <= hist.bins; ++b) out.edges.push_back(hist.lo + (hist.hi - hist.lo) * b / hist.bins);
    out.edges.push_back(std::numeric_limits<double>::infinity());
    return out;
}

EmpiricalComparison empirical_compare(const EmpiricalSummary& s, const WalkLaws& walk) {
    if (s.spec != walk.spec().name()) throw Error(Errc::invalid_argument, "summary and walk use different specs");
    if (s.n < 1 || s.n > walk.n_max()) throw Error(Errc::out_of_range, "summary step count not covered by the walk");
    const GridDensity ps = rescale_sqrt(walk.pbar(s.n), s.n);
    const auto& g = ps.grid();
    const double N = static_cast<double>(s.samples);

    EmpiricalComparison c;
    const double F = walk.Fbar0(s.n);
    double se = s.Fbar0_se > 0 ? s.Fbar0_se : std::sqrt(F * (1 - F) / N);
    c.fbar_z = std::abs(s.Fbar0_hat - F) / se;
    c.mean_z = std::abs(s.mean_max_scaled - moment(ps, 1)) / s.mean_se;
    c.m2_z = std::abs(s.m2_plus_hat - moment(ps, 2, Region::positive)) / s.m2_se;

    // grid mass per histogram bin, cells split by overlap
    std::vector<double> mass(s.counts.size(), 0.0);
    const std::size_t nb = s.counts.size();
    std::size_t b = 0;
    for (std::size_t i = 0; i < g.count; ++i) {
        double a = g.x(i) - 0.5 * g.step;
        const double e = a + g.step;
        while (a < e) {
            while (b + 1 < nb && s.edges[b + 1] <= a) ++b;
            const double stop = std::min(e, s.edges[b + 1]);
            mass[b] += ps[i] * (stop - a);
            a = stop;
            if (b + 1 >= nb) break;
        }
    }
    double tv = 0;
    for (std::size_t k = 0; k < nb; ++k) tv += std::abs(s.counts[k] / N - mass[k]);
    c.tv_hist = 0.5 * tv;

    // second-order error of the piecewise-constant split at each finite edge
    for (std::size_t k = 1; k + 1 < s.edges.size(); ++k) {
        const double x = s.edges[k];
        const double r = (x - g.x_min) / g.step;
        if (r < 1 || r > static_cast<double>(g.count) - 2) continue;
        const auto i = static_cast<std::size_t>(std::llround(r));
        c.binning_allowance += std::abs(ps[i + 1] - ps[i - 1]) * g.step / 16.0;
    }
    return c;
}

std::string summary_json(const EmpiricalSummary& s) {
    nlohmann::ordered_json j;
    j["spec"] = s.spec;
    j["n"] = s.n;
    j["samples"] = s.samples;
    j["seed"] = s.seed;
    j["Fbar0_hat"] = s.Fbar0_hat;
    j["Fbar0_se"] = s.Fbar0_se;
    j["mean_max_scaled"] = s.mean_max_scaled;
    j["mean_se"] = s.mean_se;
    j["m2_plus_hat"] = s.m2_plus_hat;
    j["m2_se"] = s.m2_se;
    j["histogram_total"] = std::accumulate(s.counts.begin(), s.counts.end(), 0LL);
    return j.dump(2) + "\n";
}

void write_histogram_csv(std::ostream& os, const EmpiricalSummary& s) {
    io::CsvWriter w(os, {"bin_lo", "bin_hi", "count"});
    for (std::size_t b = 0; b < s.counts.size(); ++b) w.cell(s.edges[b]).cell(s.edges[b + 1]).cell(s.counts[b]).end_row();
}

} // namespace maxwalk
