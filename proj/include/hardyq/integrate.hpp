#pragma once

#include "hardyq/ode.hpp"
#include "hardyq/params.hpp"

#include <vector>

namespace hardyq {

// Controls for the adaptive integration of the shooting system. Below r = 1
// the integrator works in s = log r with w = r q_r, so the origin singularity
// never enters the step-size control; above r = 1 it works in r directly.
struct IntegrateOpts {
    double r_max = 30.0;
    double rtol = 1e-10;
    double atol = 1e-12;
    double escape_threshold = 1e8; // on |q| + |qr| (|q| + |w| below r = 1)
    double tail_threshold = 1e-4;  // trap on |q|+|qr| with qr/q in (-1.5,-0.5); <=0 disables
    bool detect_q_zero = true;
    bool detect_qr_zero = true;
    double event_width = 1e-12; // localization width in r
    bool with_variational = false;
    long max_steps = 500000;
    // When set, integration lands exactly on these radii and records only them.
    const std::vector<double>* record_nodes = nullptr;
};

// Integrate outward from `start` until an event, r_max, or failure.
// (vq0, vqr0) seeds the linearized-in-b companion system when requested;
// its samples land in Trajectory::vq / Trajectory::vqr.
Trajectory integrate_trajectory(const Params& P, const OdeState& start, double vq0, double vqr0,
                                const IntegrateOpts& opts);

// Integrate inward from `start` down to r_lo (> 0), recording the given nodes
// (descending run, samples returned in increasing r). Used for tail matching:
// the outward-growing mode decays in this direction, so the run is stable.
Trajectory integrate_inward(const Params& P, const OdeState& start, double r_lo,
                            const std::vector<double>* record_nodes, double rtol = 1e-12);

} // namespace hardyq
