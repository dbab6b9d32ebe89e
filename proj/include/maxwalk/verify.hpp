#pragma once

#include "maxwalk/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maxwalk {

struct VerifySettings {
    std::vector<std::string> specs = {"gaussian", "uniform", "laplace", "mixture", "spike"};
    int n_max = 64;
    std::size_t grid_points = 1u << 14;
    double half_width_factor = 1.25;
    std::optional<double> decomp_M;
    double t_window = 3.0;
    double clt_gamma = 1.0;
    double tail_C = 4.0;
    long long mc_samples = 100000;
    std::uint64_t mc_seed = 20240607;
    bool run_montecarlo = true;
};

VerifySettings verify_settings(const RunConfig& c);

enum class Relation { le, ge };

struct CheckResult {
    std::string id;    // stable: "<module>.<name>" or "<module>.<name>/<spec>"
    int criterion = 0; // acceptance criterion number, 0 for module invariants
    std::string spec;  // empty for spec-independent checks
    double measured = 0;
    double threshold = 0;
    Relation relation = Relation::le;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    std::size_t failures() const;
    /// Checks tagged with the criterion; all must pass and at least one must have run.
    bool criterion_passed(int criterion) const;
};

VerifyReport run_verify(const VerifySettings& s);

/// Deterministic JSON (no timestamps, no timings).
std::string report_json(const VerifyReport& r, const VerifySettings& s);

} // namespace maxwalk
