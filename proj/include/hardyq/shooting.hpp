#pragma once

#include "hardyq/integrate.hpp"
#include "hardyq/ode.hpp"
#include "hardyq/params.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hardyq {

// Leading-order origin data: q = b r^{-gamma0}, q_r = -gamma0 b r^{-gamma0-1},
// plus the b-derivative of the same law as the linearized companion seed.
// Valid for b > 0; the negative branch is reached through `mirrored`.
struct OriginData {
    double b;
    double r0;
    OdeState state;
    double vq0;
    double vqr0;
};

OriginData origin_expansion(const Params& P, double b, double r0);
OriginData mirrored(const OriginData& o);

// Start radius giving ~1e-9 relative seeding error (law correction O(r0^{2 sigma})).
double default_r0(const Params& P);

enum class ShotTag { Splus, Sminus, Undecided };

const char* tag_name(ShotTag t);

struct ClassifyOpts {
    double r_max = 30.0;
    double rtol = 1e-10;
    double tail_threshold = 1e-4;
    double transversality_tol = 1e-10;
    double r0 = 0.0; // 0: use default_r0
    bool with_variational = false;
};

// Splus: q_r vanished first with q > 0 (and q_rr > 0 there);
// Sminus: q vanished first with q_r < 0;
// Undecided: entered the decay funnel (|q|+|q_r| small, q_r/q near -1) or
// reached r_max without an event.
struct Classification {
    ShotTag tag;
    std::optional<Event> event;
    Trajectory traj;
};

Classification classify(const Params& P, double b, const ClassifyOpts& opts = {});

struct BisectionResult {
    double b_lo;
    double b_hi;
    double b0; // midpoint of the final bracket
    int iterations;
    int undecided_assignments; // midpoints resolved by the deep-tail sign rule
};

// Standard bisection on the classification. Requires classify(b_lo) = Splus
// and classify(b_hi) = Sminus. Undecided midpoints are retried with a doubled
// r_max and a 10x deeper tail trap (3 attempts), then assigned by sign(q+q_r)
// at the tail entry.
BisectionResult bisect_ground_state(const Params& P, double b_lo, double b_hi,
                                    double tol_b = 1e-13, const ClassifyOpts& opts = {});

struct ScanEntry {
    double b;
    std::optional<ShotTag> tag; // empty on per-point integration failure
    double r_event;             // NaN when there was no event
    std::string error;
};

struct ScanResult {
    std::vector<ScanEntry> entries;
    bool monotone; // no Sminus below any Splus
};

// Classify n log-spaced values of b in [b_lo, b_hi]; per-point failures are
// recorded, never thrown.
ScanResult scan_bracket(const Params& P, double b_lo, double b_hi, int n,
                        const ClassifyOpts& opts = {});

// Linearized-in-b solution along the shot at b: samples, sign changes, and
// the tail behavior indicator (last sample of vq).
struct VariationalResult {
    Trajectory traj;
    int zero_count;
    double vq_end;
    double r_end;
};

VariationalResult variational_qb(const Params& P, double b, const ClassifyOpts& opts = {});

// Decaying-solution model at infinity: q = c r^{-(d-1)/2} e^{-r} S(r) with
// S(r) = sum_k a_k r^{-k}, a_0 = 1, a_k = a_{k-1} (beta^2 - (2k-1)^2)/(8k).
// Four correction terms; relative truncation ~ a5 / r^5.
struct TailSeries {
    int d;
    std::array<double, 5> a;

    static TailSeries make(const Params& P);
    double value(double r, double c) const;
    double deriv(double r, double c) const;
    double log_factor(double r) const; // log S(r)
};

struct TailFit {
    double c0;
    double residual;   // RMS of log q about the fitted model
    double dev_lo;     // |q_r/q + 1| at the window edges
    double dev_hi;
    bool decay_ok;     // q_r/q stayed within (-1.5, -0.5) on the window
    int n_points;
};

// One-free-parameter fit of log q to log c - r - ((d-1)/2) log r + log S(r)
// over samples with r in [win_lo, win_hi].
TailFit fit_tail_constant(const Params& P, const Trajectory& traj, double win_lo, double win_hi);

struct MatchOpts {
    double r_match = 2.0;
    double r_launch = 38.0;
    double rtol = 1e-12;
    int max_iter = 16;
};

// Two-parameter refinement: Newton on (b, c) so that the outward shot and the
// inward tail integration agree in (q, q_r) at r_match. The inward leg is the
// profile's clean tail (the outward-growing mode decays in that direction).
struct MatchedTails {
    double b0;
    double c0;
    double mismatch; // final |F| relative to the local solution scale
    int iterations;
    Trajectory inward; // natural samples on [r_match, r_launch]
};

MatchedTails match_tails(const Params& P, double b_init, const MatchOpts& opts = {});

} // namespace hardyq
