#include "maxwalk/config.hpp"
#include "maxwalk/error.hpp"
#include "maxwalk/runner.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

int main(int argc, char** argv) {
    using namespace maxwalk;
    CLI::App app{"Law of the running maximum of a random walk: routes, distances, diagnostics"};
    std::string mode, config_path, spec, out;
    std::optional<int> nmax, grid_points;
    std::optional<std::uint64_t> seed;
    app.add_option("mode", mode, "curves | verify | charfn | montecarlo | density | decomp")
        ->required()
        ->check(CLI::IsMember({"curves", "verify", "charfn", "montecarlo", "density", "decomp"}));
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--spec", spec, "increment law: gaussian, uniform, laplace, mixture, spike");
    app.add_option("--nmax", nmax, "largest step count");
    app.add_option("--grid-points", grid_points, "grid cells, a power of two");
    app.add_option("--seed", seed, "Monte Carlo seed");
    app.add_option("--out", out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    try {
        RunConfig c = load_config(config_path);
        c.mode = parse_mode(mode);
        if (!spec.empty()) {
            c.spec = spec;
            c.spec_params.clear();
            c.verify_specs = {spec};
        }
        if (nmax) {
            c.n_max = *nmax;
            if (c.n_list_explicit) {
                std::erase_if(c.n_list, [&](int n) { return n > c.n_max; });
            } else {
                c.n_list = default_n_list(c.n_max);
            }
        }
        if (grid_points) {
            if (*grid_points <= 0) throw Error(Errc::config, "config: grid_points must be positive");
            c.grid_points = static_cast<std::size_t>(*grid_points);
        }
        if (seed) c.mc_seed = *seed;
        if (!out.empty()) c.out = out;
        c.validate();
        return run(c, std::cout);
    } catch (const Error& e) {
        std::cerr << "maxwalk: " << e.what() << "\n";
        return e.code() == Errc::config ? exit_config_error : exit_verify_failed;
    } catch (const std::exception& e) {
        std::cerr << "maxwalk: " << e.what() << "\n";
        return exit_verify_failed;
    }
}
