#pragma once

#include <cmath>

namespace hardyq {

// Problem parameters for the radial equation
//   q_rr + ((d-1)/r) q_r - (a/r^2) q - q + |q|^p q = 0
// on (0,inf). The inverse-square coefficient must sit above the Hardy
// threshold -((d-2)/2)^2 and below 0; the power p is energy-subcritical.
struct Params {
    int d;
    double p;
    double a;

    Params(int d_, double p_, double a_);

    // beta = sqrt((d-2)^2 + 4a) > 0; the origin exponents are
    // -(d-2-beta)/2 (admissible) and -(d-2+beta)/2 (rejected).
    double beta() const { return std::sqrt(double(d - 2) * double(d - 2) + 4.0 * a); }

    // Admissible origin exponent magnitude: q ~ b r^{-gamma0}, gamma0 in (0,(d-2)/2).
    double gamma0() const { return 0.5 * (double(d - 2) - beta()); }

    // sigma = 1 - (d-2)p/4 in (0,1); controls the size r^{2 sigma} of the
    // first nonlinear correction to the origin power law.
    double sigma() const { return 1.0 - double(d - 2) * p / 4.0; }

    // Whether the time-dependent theory applies: mass-supercritical,
    // energy-subcritical, p >= 1, and a above the spectral threshold
    // ((d-2)^2/4)(-1 + p^2/(p+1)^2).
    bool dynamics_admissible() const;
};

} // namespace hardyq
