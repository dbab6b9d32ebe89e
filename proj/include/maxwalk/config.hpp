#pragma once

#include "maxwalk/density_ops.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maxwalk {

enum class Mode { curves, verify, charfn, montecarlo, density, decomp };

std::string_view to_string(Mode m);
Mode parse_mode(std::string_view s);

struct RunConfig {
    Mode mode = Mode::curves;
    std::string spec = "gaussian";
    std::vector<double> spec_params;
    /// specs covered by `verify`; defaults to all built-ins
    std::vector<std::string> verify_specs = {"gaussian", "uniform", "laplace", "mixture", "spike"};
    int n_max = 64;
    std::vector<int> n_list = {1, 2, 4, 8, 16, 32, 64};
    /// false when n_list follows n_max
    bool n_list_explicit = false;
    std::size_t grid_points = 1u << 14;
    double half_width_factor = 1.25;
    std::optional<double> decomp_M;
    double t_window = 3.0;
    double clt_gamma = 1.0;
    double tail_C = 4.0;
    long long mc_samples = 100000;
    std::uint64_t mc_seed = 20240607;
    std::string out = "maxwalk_out";
    /// step count written by `density` (defaults to n_max)
    std::optional<int> density_n;
    ConvMode conv_mode = ConvMode::fast;

    /// Throws Error(Errc::config) with a schema message.
    void validate() const;
};

/// Default n_list for a given n_max: powers of two below it, plus n_max.
std::vector<int> default_n_list(int n_max);

/// Parse a JSON config. Unknown keys are rejected.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

} // namespace maxwalk
