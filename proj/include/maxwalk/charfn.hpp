#pragma once

#include "maxwalk/grid.hpp"
#include "maxwalk/walk.hpp"

#include <array>
#include <complex>
#include <iosfwd>
#include <vector>

namespace maxwalk {

using cplx = std::complex<double>;

/// Characteristic function and derivatives up to `order` on a t grid.
struct CharFnSamples {
    std::vector<double> t;
    int order = 0;
    std::array<std::vector<cplx>, 3> values; // values[j][i] = j-th derivative at t[i]
};

std::vector<double> uniform_t_grid(double t_max, double spacing);

/// step * sum (ix)^j e^{itx} f(x); derivatives by moment weighting.
CharFnSamples charfn(const GridDensity& f, const std::vector<double>& t, int order);
/// phibar_0 = 1; phibar_k(t) = int_{-inf}^0 (1 - e^{itx}) dFbar_k(x)
CharFnSamples phibar(const WalkLaws& walk, int k, const std::vector<double>& t);
/// Transform of phi_+ through the representation valid for any n.
CharFnSamples phihat_plus(const std::vector<double>& t, int n);
/// sum_k f(t)^k phibar_{n-k}(t), derivatives by the product rule.
CharFnSamples nagaev_charfn(const WalkLaws& walk, int n, const std::vector<double>& t);

/// Largest |a - b| per order over the common t grid.
std::array<double, 3> max_abs_diff(const CharFnSamples& a, const CharFnSamples& b);

struct Prop61Report {
    double d0 = 0, d1 = 0, d2 = 0;
    /// smallest t > 0 with |f(t)| <= 0.99 for the increment law
    double t_contraction = 0;
};
Prop61Report prop61_report(const WalkLaws& walk, int n, double t_window = 3.0);

/// sup over |t| <= gamma sqrt(n) of |f^n(t/sqrt n) - e^{-t^2/2}| e^{t^2/4}.
/// f is corrected for cell averaging (divided by sinc(t h / 2)).
double clt_envelope(const WalkLaws& walk, int n, double gamma = 1.0);

void write_charfn_csv(std::ostream& os, const CharFnSamples& s);

} // namespace maxwalk
