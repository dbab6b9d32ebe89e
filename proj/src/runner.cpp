#include "maxwalk/runner.hpp"

#include "maxwalk/charfn.hpp"
#include "maxwalk/decomposition.hpp"
#include "maxwalk/density_ops.hpp"
#include "maxwalk/entropy.hpp"
#include "maxwalk/io.hpp"
#include "maxwalk/limits.hpp"
#include "maxwalk/montecarlo.hpp"
#include "maxwalk/verify.hpp"
#include "maxwalk/walk.hpp"

#include <filesystem>
#include <ostream>
#include <sstream>

namespace maxwalk {

namespace {

namespace fs = std::filesystem;

std::string path_in(const RunConfig& c, const std::string& file) { return (fs::path(c.out) / file).string(); }

WalkLaws build_walk(const RunConfig& c) {
    const DistributionSpec spec = DistributionSpec::named(c.spec, c.spec_params);
    const GridSpec grid = GridSpec::for_walk(c.n_max, c.grid_points, c.half_width_factor);
    return WalkLaws(spec, c.n_max, grid, WalkOptions{c.conv_mode});
}

DecompTable build_table(const RunConfig& c, const WalkLaws& walk) {
    const double M = c.decomp_M.value_or(default_bound(walk.p()));
    return DecompTable(binomial_split(walk.p(), M), c.n_max);
}

void write(const RunConfig& c, const std::string& file, const std::string& body, std::ostream& log) {
    const std::string p = path_in(c, file);
    io::write_text_file(p, body);
    log << "wrote " << p << "\n";
}

int run_curves(const RunConfig& c, std::ostream& log) {
    const WalkLaws walk = build_walk(c);
    const DecompTable table = build_table(c, walk);
    const auto conv = convergence_curves(walk, c.n_list, c.tail_C);
    std::vector<CurveRow> rows;
    std::vector<EntropyRow> ent;
    for (const auto& r : conv) {
        CurveRow row;
        row.conv = r;
        if (walk.spec().bounded_density()) row.alesh = alesh_residual(walk, r.n);
        row.local_a = local_residual(table, walk, r.n).part_a;
        rows.push_back(row);
        ent.push_back({r.n, r.D, r.D_plus, r.tv, r.pinsker_slack, 1 - r.Fbar0});
    }
    std::ostringstream curves, entropy, scalars;
    write_curves_csv(curves, rows);
    write_entropy_rows(entropy, ent);
    write_scalar_table(scalars, walk);
    write(c, "curves_" + c.spec + ".csv", curves.str(), log);
    write(c, "entropy_" + c.spec + ".csv", entropy.str(), log);
    write(c, "scalars_" + c.spec + ".csv", scalars.str(), log);
    return exit_ok;
}

int run_verify_mode(const RunConfig& c, std::ostream& log) {
    const VerifySettings s = verify_settings(c);
    const VerifyReport r = run_verify(s);
    for (const auto& ch : r.checks) {
        log << (ch.skipped ? "SKIP " : ch.pass ? "PASS " : "FAIL ") << ch.id << " measured=" << io::fmt(ch.measured)
            << (ch.relation == Relation::le ? " <= " : " >= ") << io::fmt(ch.threshold) << "\n";
    }
    write(c, "verify_report.json", report_json(r, s), log);
    log << r.failures() << " of " << r.checks.size() << " checks failed\n";
    return r.all_passed() ? exit_ok : exit_verify_failed;
}

int run_charfn(const RunConfig& c, std::ostream& log) {
    const WalkLaws walk = build_walk(c);
    const auto t = uniform_t_grid(c.t_window, 0.01);
    {
        std::ostringstream os;
        write_charfn_csv(os, charfn(walk.p(), t, 2));
        write(c, "charfn_" + c.spec + "_p.csv", os.str(), log);
    }
    {
        std::ostringstream os;
        write_charfn_csv(os, phihat_plus(t, 1));
        write(c, "charfn_phihat_plus.csv", os.str(), log);
    }
    for (int n : c.n_list) {
        std::ostringstream os;
        write_charfn_csv(os, charfn(rescale_sqrt(walk.pbar(n), n), t, 2));
        write(c, "charfn_" + c.spec + "_n" + std::to_string(n) + ".csv", os.str(), log);
        const Prop61Report pr = prop61_report(walk, n, c.t_window);
        log << "n=" << n << " d0=" << io::fmt(pr.d0) << " d1=" << io::fmt(pr.d1) << " d2=" << io::fmt(pr.d2)
            << " clt=" << io::fmt(clt_envelope(walk, n, c.clt_gamma)) << "\n";
    }
    return exit_ok;
}

int run_montecarlo(const RunConfig& c, std::ostream& log) {
    const WalkLaws walk = build_walk(c);
    for (int n : c.n_list) {
        const EmpiricalSummary s = simulate(walk.spec(), n, c.mc_samples, c.mc_seed);
        const EmpiricalComparison ec = empirical_compare(s, walk);
        const std::string stem = "mc_" + c.spec + "_n" + std::to_string(n);
        write(c, stem + ".json", summary_json(s), log);
        std::ostringstream os;
        write_histogram_csv(os, s);
        write(c, stem + "_hist.csv", os.str(), log);
        log << "n=" << n << " fbar_z=" << io::fmt(ec.fbar_z) << " mean_z=" << io::fmt(ec.mean_z)
            << " m2_z=" << io::fmt(ec.m2_z) << " tv_hist=" << io::fmt(ec.tv_hist) << "\n";
    }
    return exit_ok;
}

int run_density(const RunConfig& c, std::ostream& log) {
    const WalkLaws walk = build_walk(c);
    const int n = c.density_n.value_or(c.n_max);
    std::ostringstream os;
    write_csv(os, walk.pbar(n));
    write(c, "pbar_" + c.spec + "_n" + std::to_string(n) + ".csv", os.str(), log);
    return exit_ok;
}

int run_decomp(const RunConfig& c, std::ostream& log) {
    const WalkLaws walk = build_walk(c);
    const DecompTable table = build_table(c, walk);
    log << "rho=" << io::fmt(table.rho()) << " M=" << io::fmt(table.decomp().bound_M) << "\n";
    std::ostringstream os;
    write_lemma31_rows(os, lemma31_diagnostics(walk, table, c.n_list));
    write(c, "decomp_" + c.spec + ".csv", os.str(), log);
    return exit_ok;
}

} // namespace

int run(const RunConfig& c, std::ostream& log) {
    c.validate();
    switch (c.mode) {
    case Mode::curves: return run_curves(c, log);
    case Mode::verify: return run_verify_mode(c, log);
    case Mode::charfn: return run_charfn(c, log);
    case Mode::montecarlo: return run_montecarlo(c, log);
    case Mode::density: return run_density(c, log);
    case Mode::decomp: return run_decomp(c, log);
    }
    return exit_ok;
}

} // namespace maxwalk
