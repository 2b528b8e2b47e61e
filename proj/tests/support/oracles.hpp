#pragma once

#include "hardyq/params.hpp"

#include <vector>

// Independent cross-checks, deliberately built from different numerics than
// the library: fixed-step RK4 in log coordinates for shot classification, and
// a Petviashvili relaxation on a separate uniform-in-log grid with its own
// Thomas solver for the ground state itself.
namespace oracle {

enum class Tag { Splus, Sminus, Undecided };

Tag classify_rk4(const hardyq::Params& P, double b, double r0 = 1e-4, double h = 1e-4,
                 double r_max = 30.0, double tail = 1e-4);

struct Relaxation {
    std::vector<double> r, q;
    double b0 = 0.0;        // limit of r^{gamma0} q(r) at the inner edge
    double mass = 0.0;
    double kinetic_a = 0.0; // gradient term plus the a/r^2 term
    double lp = 0.0;        // integral of q^{p+2}
    double energy = 0.0;
    int iterations = 0;
    bool converged = false;
};

Relaxation relax_ground_state(const hardyq::Params& P, double r_min = 1e-5,
                              double r_max = 40.0, int n = 6000, int max_iter = 800,
                              double tol = 1e-12);

} // namespace oracle
