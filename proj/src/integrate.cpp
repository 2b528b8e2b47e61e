#include "hardyq/integrate.hpp"

#include "hardyq/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>

namespace hardyq {

namespace {

using State = std::array<double, 4>; // (q, qr, vq, vqr); below r = 1 the derivative slots hold r*d/dr

// Right-hand sides of the coupled field + linearized-in-b system. The log
// phase uses s = log r, w = r q_r, so both components stay O(1) at the origin
// and every term is exactly odd under negation of the solution pair.
struct PhaseRhs {
    Params P;
    bool log_phase;

    void operator()(double x, const State& y, State& f) const {
        const double pw = std::pow(std::fabs(y[0]), P.p);
        if (log_phase) {
            const double r2 = std::exp(2.0 * x);
            f[0] = y[1];
            f[1] = -double(P.d - 2) * y[1] + P.a * y[0] + r2 * (y[0] - pw * y[0]);
            f[2] = y[3];
            f[3] = -double(P.d - 2) * y[3] + P.a * y[2] + r2 * (y[2] - (P.p + 1.0) * pw * y[2]);
        } else {
            const double r = x;
            const double ir2 = 1.0 / (r * r);
            f[0] = y[1];
            f[1] = -double(P.d - 1) / r * y[1] + P.a * ir2 * y[0] + y[0] - pw * y[0];
            f[2] = y[3];
            f[3] = -double(P.d - 1) / r * y[3] + P.a * ir2 * y[2] + y[2] - (P.p + 1.0) * pw * y[2];
        }
    }
};

// Dormand-Prince 5(4) with FSAL; returns the RMS-scaled error estimate.
struct Dp5 {
    PhaseRhs rhs;
    int ncomp;

    double step(double x, const State& y, double h, const State& k1, State& y5, State& k7,
                double rtol, double atol) const {
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                                a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                                e3 = 500.0 / 1113 - 7571.0 / 16695, e4 = 125.0 / 192 - 393.0 / 640,
                                e5 = -2187.0 / 6784 + 92097.0 / 339200,
                                e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

        State k2, k3, k4, k5, k6, t;
        auto stage = [&](auto comb, State& k, double c) {
            for (int i = 0; i < ncomp; ++i) t[i] = y[i] + h * comb(i);
            for (int i = ncomp; i < 4; ++i) t[i] = 0.0;
            rhs(x + c * h, t, k);
        };
        stage([&](int i) { return a21 * k1[i]; }, k2, 1.0 / 5);
        stage([&](int i) { return a31 * k1[i] + a32 * k2[i]; }, k3, 3.0 / 10);
        stage([&](int i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; }, k4, 4.0 / 5);
        stage([&](int i) { return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]; }, k5,
              8.0 / 9);
        stage([&](int i) {
            return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
        }, k6, 1.0);
        for (int i = 0; i < ncomp; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        for (int i = ncomp; i < 4; ++i) y5[i] = 0.0;
        rhs(x + h, y5, k7);

        double err2 = 0.0;
        for (int i = 0; i < ncomp; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                  e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            err2 += (e / sc) * (e / sc);
        }
        return std::sqrt(err2 / ncomp);
    }
};

struct PhaseResult {
    enum Status { ReachedEnd, GotEvent, Escaped, Stalled } status;
    State y;        // state at end / event
    double x;       // coordinate at end / event
    Event event;    // filled for GotEvent and Escaped
};

class PhaseDriver {
  public:
    PhaseDriver(const Params& P, bool log_phase, const IntegrateOpts& opts, int dir)
        : rhs_{P, log_phase}, dp5_{rhs_, opts.with_variational ? 4 : 2}, opts_(opts),
          dir_(dir), log_(log_phase) {}

    // `record(r, y)` fires for the start point (only without nodes), every
    // natural accepted endpoint (without nodes), and every requested node.
    template <class Rec>
    PhaseResult run(double x0, State y, double x_end, const std::vector<double>* nodes, Rec record,
                    long& steps_left) {
        double x = x0;
        State k1, k7, ytry;
        rhs_(x, y, k1);
        double h = dir_ * std::min(1e-4, 1e-2 * std::fabs(x_end - x0) + 1e-300);
        std::size_t inode = 0;
        if (nodes) {
            while (inode < nodes->size() && !ahead(x, to_x((*nodes)[inode]))) ++inode;
        } else {
            record(from_x(x), y);
        }

        while (ahead(x, x_end)) {
            if (--steps_left <= 0) return {PhaseResult::Stalled, y, x, {}};
            double target = x + h;
            bool cut = false, node_hit = false;
            if (nodes && inode < nodes->size()) {
                const double xn = to_x((*nodes)[inode]);
                if (!ahead(target, xn)) {
                    target = xn;
                    cut = node_hit = true;
                }
            }
            if (!ahead(target, x_end)) {
                if (!node_hit) cut = true;
                node_hit = node_hit && to_x((*nodes)[inode]) == x_end;
                target = x_end;
            }
            const double hstep = target - x;

            const double err = dp5_.step(x, y, hstep, k1, ytry, k7, opts_.rtol, opts_.atol);
            if (!std::isfinite(err)) {
                h *= 0.25;
                if (too_small(h, x)) return escape_result(x, y);
                continue;
            }
            if (err > 1.0) {
                h = hstep * std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (too_small(h, x)) {
                    if (std::fabs(y[0]) + std::fabs(y[1]) > 1e6) return escape_result(x, y);
                    return {PhaseResult::Stalled, y, x, {}};
                }
                continue;
            }

            if (auto ev = scan_events(x, y, target, ytry))
                return {PhaseResult::GotEvent, ev->second, to_x(ev->first.r), ev->first};

            const double size = std::fabs(ytry[0]) + std::fabs(ytry[1]);
            if (!std::isfinite(size) || size > opts_.escape_threshold)
                return escape_result(target, ytry);

            x = target;
            y = ytry;
            k1 = k7;
            if (node_hit) {
                record((*nodes)[inode], y);
                ++inode;
            } else if (!nodes) {
                record(from_x(x), y);
            }
            if (!log_ && opts_.tail_threshold > 0.0 && y[0] != 0.0) {
                const double ratio = y[1] / y[0];
                if (std::fabs(y[0]) + std::fabs(y[1]) < opts_.tail_threshold && ratio > -1.5 &&
                    ratio < -0.5)
                    return {PhaseResult::GotEvent, y, x,
                            Event{EventKind::TailEntered, from_x(x), to_state(x, y)}};
            }
            if (!cut) h = hstep * std::min(5.0, std::max(0.2, 0.9 * safe_factor(err)));
        }
        return {PhaseResult::ReachedEnd, y, x, {}};
    }

    OdeState to_state(double x, const State& y) const {
        if (log_) {
            const double r = std::exp(x);
            return {r, y[0], y[1] / r};
        }
        return {x, y[0], y[1]};
    }

  private:
    PhaseRhs rhs_;
    Dp5 dp5_;
    const IntegrateOpts& opts_;
    int dir_;
    bool log_;

    double to_x(double r) const { return log_ ? std::log(r) : r; }
    double from_x(double x) const { return log_ ? std::exp(x) : x; }
    bool ahead(double a, double b) const { return dir_ > 0 ? a < b : a > b; }
    static double safe_factor(double err) { return err > 0.0 ? std::pow(err, -0.2) : 5.0; }
    static bool too_small(double h, double x) {
        return std::fabs(h) <
               16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x));
    }
    PhaseResult escape_result(double x, const State& y) const {
        return {PhaseResult::Escaped, y, x, Event{EventKind::Escaped, from_x(x), to_state(x, y)}};
    }

    static int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

    // March a short span with fresh error control; used to probe candidate
    // event radii so localization accuracy matches the integrator's own.
    State reintegrate(double xa, State y, double xb) const {
        double x = xa;
        State k1, k7, ytry;
        rhs_(x, y, k1);
        double h = (xb - xa) * 0.5;
        for (int guard = 0; guard < 4000 && ahead(x, xb); ++guard) {
            double target = x + h;
            if (!ahead(target, xb)) target = xb;
            const double err = dp5_.step(x, y, target - x, k1, ytry, k7, opts_.rtol, opts_.atol);
            if (!std::isfinite(err)) {
                h *= 0.25;
                if (too_small(h, x)) break;
                continue;
            }
            if (err > 1.0) {
                h = (target - x) * std::max(0.2, 0.9 * std::pow(err, -0.2));
                if (too_small(h, x)) break;
                continue;
            }
            const double hstep = target - x;
            x = target;
            y = ytry;
            k1 = k7;
            h = hstep * std::min(5.0, std::max(0.2, 0.9 * safe_factor(err)));
        }
        return y;
    }

    // Bisect a sign change of component `comp` inside an accepted step down to
    // opts_.event_width in r; returns (event, full state there).
    std::pair<Event, State> locate(double xa, const State& ya, double xb, int comp) const {
        const int s0 = sgn(ya[comp]);
        double lo = xa, hi = xb;
        const double width =
            std::max(log_ ? opts_.event_width / std::exp(std::max(xa, xb)) : opts_.event_width,
                     8.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::fabs(xb)));
        for (int it = 0; it < 90 && std::fabs(hi - lo) > width; ++it) {
            const double mid = 0.5 * (lo + hi);
            const State ym = reintegrate(xa, ya, mid);
            if (sgn(ym[comp]) == s0) lo = mid;
            else hi = mid;
        }
        const State ye = reintegrate(xa, ya, hi);
        Event ev{comp == 0 ? EventKind::QZero : EventKind::QrZero, from_x(hi), to_state(hi, ye)};
        return {ev, ye};
    }

    std::optional<std::pair<Event, State>> scan_events(double xa, const State& ya, double xb,
                                                       const State& yb) const {
        std::optional<std::pair<Event, State>> best;
        auto consider = [&](int comp) {
            if (sgn(ya[comp]) != 0 && sgn(yb[comp]) != sgn(ya[comp])) {
                auto cand = locate(xa, ya, xb, comp);
                if (!best || ahead(to_x(cand.first.r), to_x(best->first.r))) best = cand;
            }
        };
        if (opts_.detect_q_zero) consider(0);
        if (opts_.detect_qr_zero) consider(1);
        return best;
    }
};

} // namespace

Trajectory integrate_trajectory(const Params& P, const OdeState& start, double vq0, double vqr0,
                                const IntegrateOpts& opts) {
    Trajectory traj;
    auto record = [&](double r, const State& y) {
        if (!traj.r.empty() && traj.r.back() == r) return;
        traj.r.push_back(r);
        traj.q.push_back(y[0]);
        traj.qr.push_back(r < 1.0 ? y[1] / r : y[1]);
        if (opts.with_variational) {
            traj.vq.push_back(y[2]);
            traj.vqr.push_back(r < 1.0 ? y[3] / r : y[3]);
        }
    };
    auto finish = [&](const PhaseResult& res) {
        switch (res.status) {
            case PhaseResult::GotEvent:
            case PhaseResult::Escaped:
                record(res.event.r, res.y);
                traj.events.push_back(res.event);
                break;
            case PhaseResult::Stalled:
                traj.valid = false;
                break;
            case PhaseResult::ReachedEnd:
                break;
        }
    };

    long steps_left = opts.max_steps;
    double r = start.r;
    State y{start.q, r < 1.0 ? r * start.qr : start.qr, vq0, r < 1.0 ? r * vqr0 : vqr0};

    if (r < 1.0) {
        PhaseDriver drv(P, true, opts, +1);
        auto res = drv.run(std::log(r), y, 0.0, opts.record_nodes, record, steps_left);
        if (res.status != PhaseResult::ReachedEnd) {
            finish(res);
            return traj;
        }
        y = res.y; // w = r q_r equals q_r at r = 1
        r = 1.0;
        if (!opts.record_nodes) record(1.0, y);
    }
    if (r < opts.r_max) {
        PhaseDriver drv(P, false, opts, +1);
        finish(drv.run(r, y, opts.r_max, opts.record_nodes, record, steps_left));
    }
    return traj;
}

Trajectory integrate_inward(const Params& P, const OdeState& start, double r_lo,
                            const std::vector<double>* record_nodes, double rtol) {
    if (r_lo < 1.0 || start.r <= r_lo)
        throw validation_error("integrate_inward requires 1 <= r_lo < start.r");
    IntegrateOpts opts;
    opts.rtol = rtol;
    opts.atol = 1e-300; // pure relative control: the tail spans many decades
    opts.tail_threshold = 0.0;
    opts.detect_q_zero = opts.detect_qr_zero = false;

    std::vector<double> nodes_desc;
    if (record_nodes) {
        nodes_desc.assign(record_nodes->begin(), record_nodes->end());
        std::sort(nodes_desc.rbegin(), nodes_desc.rend());
    }

    Trajectory traj;
    auto record = [&](double r, const State& y) {
        if (!traj.r.empty() && traj.r.back() == r) return;
        traj.r.push_back(r);
        traj.q.push_back(y[0]);
        traj.qr.push_back(y[1]);
    };
    long steps_left = opts.max_steps;
    State y{start.q, start.qr, 0, 0};
    PhaseDriver drv(P, false, opts, -1);
    auto res = drv.run(start.r, y, r_lo, record_nodes ? &nodes_desc : nullptr, record, steps_left);
    if (res.status == PhaseResult::Stalled) traj.valid = false;

    std::reverse(traj.r.begin(), traj.r.end());
    std::reverse(traj.q.begin(), traj.q.end());
    std::reverse(traj.qr.begin(), traj.qr.end());
    return traj;
}

} // namespace hardyq
