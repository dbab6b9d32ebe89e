#include "maxwalk/grid.hpp"

#include "maxwalk/error.hpp"
#include "maxwalk/io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace maxwalk {

std::optional<long long> GridSpec::offset_cells() const {
    const double r = x_min / step;
    const double k = std::round(r);
    if (std::abs(r - k) > 1e-7) return std::nullopt;
    return static_cast<long long>(k);
}

std::optional<std::size_t> GridSpec::zero_index() const {
    auto off = offset_cells();
    if (!off || *off > 0 || static_cast<std::size_t>(-*off) >= count) return std::nullopt;
    return static_cast<std::size_t>(-*off);
}

bool GridSpec::same_as(const GridSpec& o) const {
    if (count != o.count) return false;
    const double tol = 1e-12 * step;
    return std::abs(step - o.step) <= tol && std::abs(x_min - o.x_min) <= 1e-9 * step;
}

void GridSpec::validate() const {
    if (!(step > 0) || !std::isfinite(step))
        throw Error(Errc::invalid_argument, "grid step must be positive");
    if (count < 2) throw Error(Errc::invalid_argument, "grid needs at least two cells");
    if (!std::isfinite(x_min)) throw Error(Errc::invalid_argument, "grid origin not finite");
}

GridSpec GridSpec::centered(double step, std::size_t count) {
    GridSpec g{-static_cast<double>(count / 2) * step, step, count};
    g.validate();
    return g;
}

GridSpec GridSpec::for_walk(int n_max, std::size_t points, double pad) {
    if (n_max < 1) throw Error(Errc::invalid_argument, "n_max must be >= 1");
    if (points < 4 || (points & (points - 1)) != 0)
        throw Error(Errc::invalid_argument, "grid points must be a power of two");
    if (!(pad > 0)) throw Error(Errc::invalid_argument, "half-width factor must be positive");
    // floor at 16 steps: for small n the laplace tail past 8 sigma is ~1e-5, not negligible
    const double half_width = 8.0 * std::sqrt(static_cast<double>(std::max(n_max, 16))) * pad;
    return centered(half_width / static_cast<double>(points / 2), points);
}

GridDensity::GridDensity(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.count)
        throw Error(Errc::invalid_argument, "value count does not match grid");
}

GridDensity GridDensity::zeros(const GridSpec& grid) {
    return GridDensity(grid, std::vector<double>(grid.count, 0.0));
}

double GridDensity::mass() const {
    double s = 0;
    for (double v : values_) s += v;
    return s * grid_.step;
}

double GridDensity::sup_abs() const {
    double m = 0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double GridDensity::l1() const {
    double s = 0;
    for (double v : values_) s += std::abs(v);
    return s * grid_.step;
}

GridDensity GridDensity::scaled(double a) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= a;
    return GridDensity(grid_, std::move(out));
}

namespace {
GridDensity combine(const GridDensity& a, const GridDensity& b, double sb) {
    if (!a.grid().same_as(b.grid())) throw Error(Errc::grid_mismatch, "densities live on different grids");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + sb * b[i];
    return GridDensity(a.grid(), std::move(out));
}
} // namespace

GridDensity operator+(const GridDensity& a, const GridDensity& b) { return combine(a, b, 1.0); }
GridDensity operator-(const GridDensity& a, const GridDensity& b) { return combine(a, b, -1.0); }
GridDensity operator*(double a, const GridDensity& f) { return f.scaled(a); }

void HalfLineLaw::validate(double mass_tol) const {
    if (atom_at_zero < -mass_tol || atom_at_zero > 1 + mass_tol)
        throw Error(Errc::invalid_argument, "atom outside [0,1]");
    if (std::abs(atom_at_zero + density.mass() - 1.0) > mass_tol)
        throw Error(Errc::mass_drift, "half-line law does not have unit mass");
    const auto& g = density.grid();
    for (std::size_t i = 0; i < density.size(); ++i) {
        if (density[i] < -mass_tol) throw Error(Errc::invalid_argument, "half-line density is negative");
        if (g.x(i) < -0.5 * g.step && density[i] != 0.0)
            throw Error(Errc::invalid_argument, "half-line density has mass on (-inf,0)");
    }
}

GridDensity lift(const HalfLineLaw& law) {
    const auto z = law.density.grid().zero_index();
    if (!z) throw Error(Errc::grid_mismatch, "lift needs a grid with a cell centered at 0");
    std::vector<double> v = law.density.vec();
    v[*z] += law.atom_at_zero / law.density.step();
    return GridDensity(law.density.grid(), std::move(v));
}

void write_csv(std::ostream& os, const GridDensity& f) {
    const auto& g = f.grid();
    os << "# x_min=" << io::fmt(g.x_min) << " step=" << io::fmt(g.step) << " count=" << g.count << '\n';
    io::CsvWriter w(os, {"x", "value"});
    for (std::size_t i = 0; i < f.size(); ++i) w.cell(g.x(i)).cell(f[i]).end_row();
}

GridDensity read_csv(std::istream& is) {
    std::string line;
    GridSpec g;
    bool have_grid = false;
    std::vector<double> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tok;
            while (ss >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                auto key = tok.substr(0, eq);
                auto val = tok.substr(eq + 1);
                if (key == "x_min") g.x_min = std::stod(val);
                else if (key == "step") g.step = std::stod(val);
                else if (key == "count") g.count = std::stoull(val);
            }
            have_grid = true;
            continue;
        }
        if (line.rfind("x,", 0) == 0) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(Errc::io, "malformed density row: " + line);
        values.push_back(std::stod(line.substr(comma + 1)));
    }
    if (!have_grid) throw Error(Errc::io, "density CSV lacks the grid comment line");
    return GridDensity(g, std::move(values));
}

} // namespace maxwalk
