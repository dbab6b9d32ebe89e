#include "maxwalk/config.hpp"

#include "maxwalk/distribution.hpp"
#include "maxwalk/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace maxwalk {

std::string_view to_string(Mode m) {
    switch (m) {
    case Mode::curves: return "curves";
    case Mode::verify: return "verify";
    case Mode::charfn: return "charfn";
    case Mode::montecarlo: return "montecarlo";
    case Mode::density: return "density";
    case Mode::decomp: return "decomp";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    for (auto m : {Mode::curves, Mode::verify, Mode::charfn, Mode::montecarlo, Mode::density, Mode::decomp})
        if (to_string(m) == s) return m;
    throw Error(Errc::config, "unknown mode '" + std::string(s) + "'");
}

std::vector<int> default_n_list(int n_max) {
    std::vector<int> v;
    for (int n = 1; n < n_max; n *= 2) v.push_back(n);
    v.push_back(n_max);
    return v;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& m) { throw Error(Errc::config, "config: " + m); };
    if (n_max < 1) fail("n_max must be >= 1");
    if (n_list.empty()) fail("n_list must not be empty");
    for (int n : n_list)
        if (n < 1 || n > n_max) fail("n_list entries must lie in [1, n_max]; got " + std::to_string(n));
    if (grid_points < (1u << 12) || grid_points > (1u << 20) || (grid_points & (grid_points - 1)))
        fail("grid_points must be a power of two in [2^12, 2^20]");
    if (!(half_width_factor > 0)) fail("half_width_factor must be positive");
    if (decomp_M && !(*decomp_M > 0)) fail("decomp_M must be positive");
    if (!(t_window > 0)) fail("t_window must be positive");
    if (!(clt_gamma > 0)) fail("clt_gamma must be positive");
    if (mc_samples < 10000) fail("mc_samples must be >= 10000");
    if (density_n && (*density_n < 1 || *density_n > n_max)) fail("density_n must lie in [1, n_max]");
    if (out.empty()) fail("out must be a directory path");
    try {
        (void)DistributionSpec::named(spec, spec_params);
        for (const auto& s : verify_specs) (void)DistributionSpec::named(s);
    } catch (const Error& e) {
        fail(e.what());
    }
    if (verify_specs.empty()) fail("verify_specs must not be empty");
}

RunConfig parse_config(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::config, std::string("config: not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(Errc::config, "config: top level must be an object");
    static const std::set<std::string> known = {
        "mode", "spec", "verify_specs", "n_max", "n_list", "grid_points", "half_width_factor", "decomp_M",
        "t_window", "clt_gamma", "tail_C", "mc_samples", "mc_seed", "out", "density_n", "conv_mode"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw Error(Errc::config, "config: unknown key '" + it.key() + "'");

    RunConfig c;
    bool n_list_given = false;
    try {
        if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
        if (j.contains("spec")) {
            const auto& s = j["spec"];
            if (s.is_string()) {
                c.spec = s.get<std::string>();
            } else if (s.is_object()) {
                c.spec = s.at("name").get<std::string>();
                if (s.contains("params")) c.spec_params = s["params"].get<std::vector<double>>();
            } else {
                throw Error(Errc::config, "config: spec must be a name or {name, params}");
            }
        }
        if (j.contains("verify_specs")) c.verify_specs = j["verify_specs"].get<std::vector<std::string>>();
        if (j.contains("n_max")) c.n_max = j["n_max"].get<int>();
        if (j.contains("n_list")) {
            c.n_list = j["n_list"].get<std::vector<int>>();
            n_list_given = true;
        }
        if (j.contains("grid_points")) c.grid_points = j["grid_points"].get<std::size_t>();
        if (j.contains("half_width_factor")) c.half_width_factor = j["half_width_factor"].get<double>();
        if (j.contains("decomp_M") && !j["decomp_M"].is_null()) c.decomp_M = j["decomp_M"].get<double>();
        if (j.contains("t_window")) c.t_window = j["t_window"].get<double>();
        if (j.contains("clt_gamma")) c.clt_gamma = j["clt_gamma"].get<double>();
        if (j.contains("tail_C")) c.tail_C = j["tail_C"].get<double>();
        if (j.contains("mc_samples")) c.mc_samples = j["mc_samples"].get<long long>();
        if (j.contains("mc_seed")) c.mc_seed = j["mc_seed"].get<std::uint64_t>();
        if (j.contains("out")) c.out = j["out"].get<std::string>();
        if (j.contains("density_n") && !j["density_n"].is_null()) c.density_n = j["density_n"].get<int>();
        if (j.contains("conv_mode")) {
            const auto m = j["conv_mode"].get<std::string>();
            if (m == "fast") c.conv_mode = ConvMode::fast;
            else if (m == "direct") c.conv_mode = ConvMode::direct;
            else throw Error(Errc::config, "config: conv_mode must be 'fast' or 'direct'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::config, std::string("config: wrong value type: ") + e.what());
    }
    if (!n_list_given) c.n_list = default_n_list(c.n_max);
    c.n_list_explicit = n_list_given;
    if (j.contains("spec") && !j.contains("verify_specs")) c.verify_specs = {c.spec};
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::config, "config: cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

} // namespace maxwalk
