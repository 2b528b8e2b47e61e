#pragma once

#include "hardyq/grid.hpp"
#include "hardyq/params.hpp"
#include "hardyq/shooting.hpp"

#include <vector>

namespace hardyq {

struct ProfileOpts {
    GridSpec grid;
    double b_lo = 0.0; // <= 0: bracket found automatically
    double b_hi = 0.0;
    double bisect_tol = 1e-13;
    double rtol = 1e-10; // classification tolerance during bisection
    MatchOpts match;
};

// Ground state sampled on the radial grid, with the shooting constants and
// the integral quantities. Samples come from the bisected + tail-matched
// trajectory: outward integration up to the matching radius, inward from the
// far tail beyond it.
struct GroundStateProfile {
    Params P;
    RadialGrid grid;
    double b0 = 0.0; // origin amplitude: Q ~ b0 r^{-gamma0}
    double c0 = 0.0; // tail amplitude:   Q ~ c0 r^{-(d-1)/2} e^{-r}
    std::vector<double> Q;
    std::vector<double> Qr;
    std::vector<double> Q1; // (2/p) Q + r Qr, the scaling derivative

    double mass = 0.0;      // ||Q||_2^2
    double kinetic_a = 0.0; // ||Q||_{Hdot_a}^2 = int (Qr^2 + a Q^2/r^2) r^{d-1} dr (x surface factor omitted)
    double lp_norm = 0.0;   // ||Q||_{p+2}^{p+2}
    double energy = 0.0;    // kinetic_a/2 - lp_norm/(p+2)
    double gn_constant = 0.0;

    double seam_gap = 0.0;       // relative (q, qr) jump across the matching radius
    double match_mismatch = 0.0; // final Newton residual of the tail match
    int bisect_iterations = 0;
    int undecided_assignments = 0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
};

GroundStateProfile compute_ground_state(const Params& P, const ProfileOpts& opts = {});

// Scale-invariant functional J(f) = ||f||_{p+2}^{p+2} / (m^{t1} k^{t2}) with
// m = ||f||_2^2, k = ||f||_{Hdot_a}^2 (discrete forms on the grid) and
// t1 = (4 - p(d-2))/4, t2 = pd/4. Maximized by the ground state family.
double evaluate_J(const Params& P, const RadialGrid& g, const std::vector<double>& f);

// Interpolate profile samples at radius r (for checks between nodes).
double profile_value(const GroundStateProfile& gs, double r);

} // namespace hardyq
