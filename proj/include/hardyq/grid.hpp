#pragma once

#include "hardyq/params.hpp"

#include <vector>

namespace hardyq {

// Geometric radial grid r_i = r_min * 2^(i / per_octave), i = 0..n.
// A pure log grid keeps the spacing function smooth (clean second-order
// quadrature/FD) and makes r -> 2r an exact index shift, so discrete norms
// are invariant under the dyadic rescalings the functional tests exercise.
struct GridSpec {
    double r_min = 1e-6;
    int per_octave = 322;
    int n = 8000; // cells; n+1 nodes, r_max = r_min * 2^(n/per_octave) ~ 30.2
};

struct RadialGrid {
    GridSpec spec;
    int d = 0;
    double ds = 0.0;        // log step, ln 2 / per_octave
    std::vector<double> r;  // nodes, size n+1
    std::vector<double> w;  // trapezoid weights for integrals against r^{d-1} dr

    static RadialGrid make(int d, const GridSpec& spec = {});
    RadialGrid refined() const; // halved spacing, same span (nested nodes)

    double r_min() const { return r.front(); }
    double r_max() const { return r.back(); }
    std::size_t size() const { return r.size(); }
};

// Sum of w_i f_i: trapezoid approximation of the radial integral of f r^{d-1}.
double quadrature(const RadialGrid& g, const std::vector<double>& f);

// Quadratic kinetic form sum m_{i+1/2} (f_{i+1}-f_i)^2/h_{i+1/2} + a * sum w f^2/r^2
// (no boundary terms; meant for fields negligible at both grid ends).
double kinetic_form(const RadialGrid& g, double a, const std::vector<double>& f);

} // namespace hardyq
