#include "hardyq/grid.hpp"

#include "hardyq/errors.hpp"

#include <cmath>

namespace hardyq {

RadialGrid RadialGrid::make(int d, const GridSpec& spec) {
    if (d < 3) throw validation_error("grid dimension must be >= 3");
    if (spec.r_min <= 0.0) throw validation_error("grid r_min must be positive");
    if (spec.per_octave < 8) throw validation_error("grid per_octave must be >= 8");
    if (spec.n < 16) throw validation_error("grid must have at least 16 cells");

    RadialGrid g;
    g.spec = spec;
    g.d = d;
    g.ds = std::log(2.0) / double(spec.per_octave);
    g.r.resize(spec.n + 1);
    g.w.resize(spec.n + 1);
    for (int i = 0; i <= spec.n; ++i)
        g.r[i] = spec.r_min * std::exp2(double(i) / double(spec.per_octave));
    // In s = ln r the nodes are uniform and dr r^{d-1} = r^d ds, so the
    // trapezoid rule is ds * r_i^d with half weights at the ends.
    for (int i = 0; i <= spec.n; ++i) {
        double c = (i == 0 || i == spec.n) ? 0.5 : 1.0;
        g.w[i] = c * g.ds * std::pow(g.r[i], double(d));
    }
    return g;
}

RadialGrid RadialGrid::refined() const {
    GridSpec s = spec;
    s.per_octave *= 2;
    s.n *= 2;
    return make(d, s);
}

double quadrature(const RadialGrid& g, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.w.size(); ++i) s += g.w[i] * f[i];
    return s;
}

double kinetic_form(const RadialGrid& g, double a, const std::vector<double>& f) {
    double grad = 0.0;
    for (std::size_t i = 0; i + 1 < g.r.size(); ++i) {
        double h = g.r[i + 1] - g.r[i];
        double m = std::pow(0.5 * (g.r[i] + g.r[i + 1]), double(g.d - 1));
        double df = f[i + 1] - f[i];
        grad += m * df * df / h;
    }
    double pot = 0.0;
    for (std::size_t i = 0; i < g.r.size(); ++i) {
        double q = f[i] / g.r[i];
        pot += g.w[i] * q * q;
    }
    return grad + a * pot;
}

} // namespace hardyq
