#include "hardyq/profile.hpp"

#include "hardyq/errors.hpp"
#include "hardyq/integrate.hpp"
#include "hardyq/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace hardyq {

namespace {

struct Bracket {
    double lo, hi;
};

Bracket find_bracket(const Params& P, const ProfileOpts& opts) {
    ClassifyOpts copts;
    copts.rtol = opts.rtol;
    double lo = opts.b_lo > 0.0 ? opts.b_lo : 0.5;
    double hi = opts.b_hi > 0.0 ? opts.b_hi : 4.0;
    if (opts.b_lo <= 0.0) {
        for (int k = 0; k < 24 && classify(P, lo, copts).tag != ShotTag::Splus; ++k) lo *= 0.25;
        if (classify(P, lo, copts).tag != ShotTag::Splus)
            throw convergence_error("no positive-minimum shot found while lowering b");
    }
    if (opts.b_hi <= 0.0) {
        if (hi <= lo) hi = 4.0 * lo;
        for (int k = 0; k < 24 && classify(P, hi, copts).tag != ShotTag::Sminus; ++k) hi *= 4.0;
        if (classify(P, hi, copts).tag != ShotTag::Sminus)
            throw convergence_error("no sign-crossing shot found while raising b");
    }
    return {lo, hi};
}

// Closed-form integral pieces outside the grid span. Inside r_min the profile
// follows b r^{-gamma0}; outside r_max it follows the exponential tail model.
struct EdgePieces {
    double mass, kinetic, lp;
};

EdgePieces inner_pieces(const Params& P, double b, double r_min) {
    const double g = P.gamma0();
    const double beta = P.beta();
    EdgePieces e;
    e.mass = b * b * std::pow(r_min, P.d - 2.0 * g) / (P.d - 2.0 * g);
    e.kinetic = b * b * (g * g + P.a) * std::pow(r_min, beta) / beta;
    const double ex = P.d - (P.p + 2.0) * g;
    e.lp = std::pow(b, P.p + 2.0) * std::pow(r_min, ex) / ex;
    return e;
}

EdgePieces outer_pieces(const Params& P, double c, double r_max, const TailSeries& S) {
    // Leading order in 1/r_max; the absolute scale e^{-2 r_max} is far below
    // the quadrature error already, so corrections are not worth carrying.
    EdgePieces e;
    const double s = S.value(r_max, c) * std::pow(r_max, 0.5 * (P.d - 1.0)); // c * S(r_max) * e^{-r}
    e.mass = 0.5 * s * s;
    const double slope = 1.0 + (P.d - 1.0) / (2.0 * r_max);
    e.kinetic = 0.5 * s * s * slope * slope;
    const double q = S.value(r_max, c);
    e.lp = std::pow(std::fabs(q), P.p + 2.0) * std::pow(r_max, P.d - 1.0) / (P.p + 2.0);
    return e;
}

} // namespace

GroundStateProfile compute_ground_state(const Params& P, const ProfileOpts& opts) {
    GroundStateProfile gs{P, RadialGrid::make(P.d, opts.grid)};

    Bracket br = find_bracket(P, opts);
    ClassifyOpts copts;
    copts.rtol = opts.rtol;
    BisectionResult bis = bisect_ground_state(P, br.lo, br.hi, opts.bisect_tol, copts);
    gs.bracket_lo = bis.b_lo;
    gs.bracket_hi = bis.b_hi;
    gs.bisect_iterations = bis.iterations;
    gs.undecided_assignments = bis.undecided_assignments;

    MatchOpts mopts = opts.match;
    if (mopts.r_launch <= gs.grid.r_max() + 1.0)
        mopts.r_launch = gs.grid.r_max() + 8.0;
    MatchedTails mt = match_tails(P, bis.b0, mopts);
    gs.b0 = mt.b0;
    gs.c0 = mt.c0;
    gs.match_mismatch = mt.mismatch;

    const double rm = mopts.r_match;
    std::vector<double> nodes_out, nodes_in;
    for (double r : gs.grid.r) (r <= rm ? nodes_out : nodes_in).push_back(r);
    const std::size_t n_low = nodes_out.size(); // grid nodes at or below the seam
    if (nodes_out.empty() || nodes_out.back() != rm)
        nodes_out.push_back(rm); // seam sample from both sides
    nodes_in.insert(nodes_in.begin(), rm);

    IntegrateOpts iopts;
    iopts.r_max = rm;
    iopts.rtol = mopts.rtol;
    iopts.atol = 1e-14;
    iopts.tail_threshold = 0.0;
    iopts.detect_q_zero = iopts.detect_qr_zero = false;
    iopts.record_nodes = &nodes_out;
    OriginData o = origin_expansion(P, gs.b0, default_r0(P));
    Trajectory out = integrate_trajectory(P, o.state, 0.0, 0.0, iopts);
    if (!out.valid || out.r.size() != nodes_out.size())
        throw convergence_error("outward profile sampling failed");

    TailSeries S = TailSeries::make(P);
    OdeState far{mopts.r_launch, S.value(mopts.r_launch, gs.c0), S.deriv(mopts.r_launch, gs.c0)};
    Trajectory in = integrate_inward(P, far, rm, &nodes_in, mopts.rtol);
    if (!in.valid || in.r.size() != nodes_in.size())
        throw convergence_error("inward profile sampling failed");

    const double q_out = out.q.back(), qr_out = out.qr.back();
    const double q_in = in.q.front(), qr_in = in.qr.front();
    gs.seam_gap = std::fabs(q_out - q_in) / std::max(std::fabs(q_out), std::fabs(q_in)) +
                  std::fabs(qr_out - qr_in) / std::max(std::fabs(qr_out), std::fabs(qr_in));

    const std::size_t n = gs.grid.size();
    gs.Q.resize(n);
    gs.Qr.resize(n);
    gs.Q1.resize(n);
    for (std::size_t i = 0; i < n_low; ++i) {
        gs.Q[i] = out.q[i];
        gs.Qr[i] = out.qr[i];
    }
    for (std::size_t i = n_low; i < n; ++i) {
        // in holds the seam radius followed by the grid nodes above it.
        gs.Q[i] = in.q[i - n_low + 1];
        gs.Qr[i] = in.qr[i - n_low + 1];
    }
    for (std::size_t i = 0; i < n; ++i)
        gs.Q1[i] = (2.0 / P.p) * gs.Q[i] + gs.grid.r[i] * gs.Qr[i];

    const double* w = gs.grid.w.data();
    std::vector<double> lp(n), hard(n);
    for (std::size_t i = 0; i < n; ++i) {
        lp[i] = std::pow(std::fabs(gs.Q[i]), P.p + 2.0);
        hard[i] = gs.Q[i] / gs.grid.r[i];
    }
    EdgePieces in_e = inner_pieces(P, gs.b0, gs.grid.r_min());
    EdgePieces out_e = outer_pieces(P, gs.c0, gs.grid.r_max(), S);
    gs.mass = kernels::dot3(n, w, gs.Q.data(), gs.Q.data()) + in_e.mass + out_e.mass;
    gs.kinetic_a = kernels::dot3(n, w, gs.Qr.data(), gs.Qr.data()) +
                   P.a * kernels::dot3(n, w, hard.data(), hard.data()) + in_e.kinetic +
                   out_e.kinetic;
    gs.lp_norm = kernels::dot(n, w, lp.data()) + in_e.lp + out_e.lp;
    gs.energy = 0.5 * gs.kinetic_a - gs.lp_norm / (P.p + 2.0);
    const double t1 = (4.0 - P.p * (P.d - 2.0)) / 4.0;
    const double t2 = P.p * P.d / 4.0;
    gs.gn_constant = gs.lp_norm / (std::pow(gs.mass, t1) * std::pow(gs.kinetic_a, t2));
    return gs;
}

double evaluate_J(const Params& P, const RadialGrid& g, const std::vector<double>& f) {
    if (f.size() != g.size()) throw validation_error("field size does not match grid");
    const std::size_t n = f.size();
    std::vector<double> lp(n);
    for (std::size_t i = 0; i < n; ++i) lp[i] = std::pow(std::fabs(f[i]), P.p + 2.0);
    const double num = kernels::dot(n, g.w.data(), lp.data());
    const double m = kernels::dot3(n, g.w.data(), f.data(), f.data());
    const double k = kinetic_form(g, P.a, f);
    if (m <= 0.0 || k <= 0.0) throw validation_error("field has nonpositive norm");
    const double t1 = (4.0 - P.p * (P.d - 2.0)) / 4.0;
    const double t2 = P.p * P.d / 4.0;
    return num / (std::pow(m, t1) * std::pow(k, t2));
}

double profile_value(const GroundStateProfile& gs, double r) {
    const auto& rr = gs.grid.r;
    if (r <= rr.front()) return gs.b0 * std::pow(r, -gs.P.gamma0());
    if (r >= rr.back()) return TailSeries::make(gs.P).value(r, gs.c0);
    auto it = std::upper_bound(rr.begin(), rr.end(), r);
    std::size_t i = std::size_t(it - rr.begin()) - 1;
    // Cubic Hermite on (Q, Qr) over the cell.
    const double h = rr[i + 1] - rr[i];
    const double t = (r - rr[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * gs.Q[i] + h10 * h * gs.Qr[i] + h01 * gs.Q[i + 1] + h11 * h * gs.Qr[i + 1];
}

} // namespace hardyq
