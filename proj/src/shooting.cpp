#include "hardyq/shooting.hpp"

#include "hardyq/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hardyq {

OriginData origin_expansion(const Params& P, double b, double r0) {
    if (!(b > 0.0)) throw validation_error("origin_expansion requires b > 0");
    if (!(r0 > 0.0) || r0 > 0.1) throw validation_error("origin_expansion requires r0 in (0, 0.1]");
    const double g = P.gamma0();
    const double rg = std::pow(r0, -g);
    OriginData o;
    o.b = b;
    o.r0 = r0;
    o.state = {r0, b * rg, -g * b * rg / r0};
    o.vq0 = rg;
    o.vqr0 = -g * rg / r0;
    return o;
}

OriginData mirrored(const OriginData& o) {
    OriginData m = o;
    m.b = -o.b;
    m.state.q = -o.state.q;
    m.state.qr = -o.state.qr;
    m.vq0 = -o.vq0;
    m.vqr0 = -o.vqr0;
    return m;
}

double default_r0(const Params& P) {
    return std::min(1e-9, std::pow(10.0, -9.0 / (2.0 * P.sigma())));
}

const char* tag_name(ShotTag t) {
    switch (t) {
        case ShotTag::Splus: return "Splus";
        case ShotTag::Sminus: return "Sminus";
        case ShotTag::Undecided: return "Undecided";
    }
    return "?";
}

namespace {

IntegrateOpts to_integrate_opts(const ClassifyOpts& c) {
    IntegrateOpts io;
    io.r_max = c.r_max;
    io.rtol = c.rtol;
    io.tail_threshold = c.tail_threshold;
    io.with_variational = c.with_variational;
    return io;
}

} // namespace

Classification classify(const Params& P, double b, const ClassifyOpts& opts) {
    const double r0 = opts.r0 > 0.0 ? opts.r0 : default_r0(P);
    const OriginData o = origin_expansion(P, b, r0);
    Trajectory traj =
        integrate_trajectory(P, o.state, o.vq0, o.vqr0, to_integrate_opts(opts));
    if (!traj.valid) throw integration_error("integration stalled during classification");

    Classification out;
    out.tag = ShotTag::Undecided;
    if (traj.terminated()) {
        const Event& ev = traj.last_event();
        out.event = ev;
        switch (ev.kind) {
            case EventKind::QZero:
                if (ev.state.qr < -opts.transversality_tol) out.tag = ShotTag::Sminus;
                break;
            case EventKind::QrZero: {
                const double qrr = rhs_qrr(P, ev.r, ev.state.q, ev.state.qr);
                if (ev.state.q > opts.transversality_tol && qrr > 0.0) out.tag = ShotTag::Splus;
                break;
            }
            case EventKind::TailEntered:
                break;
            case EventKind::Escaped:
                throw integration_error("trajectory escaped before any classification event");
        }
    }
    out.traj = std::move(traj);
    return out;
}

BisectionResult bisect_ground_state(const Params& P, double b_lo, double b_hi, double tol_b,
                                    const ClassifyOpts& opts) {
    if (!(b_lo > 0.0) || !(b_hi > b_lo)) throw validation_error("bisection needs 0 < b_lo < b_hi");
    if (classify(P, b_lo, opts).tag != ShotTag::Splus)
        throw validation_error("bisection bracket: classify(b_lo) is not Splus");
    if (classify(P, b_hi, opts).tag != ShotTag::Sminus)
        throw validation_error("bisection bracket: classify(b_hi) is not Sminus");

    BisectionResult res{b_lo, b_hi, 0.0, 0, 0};
    while (res.b_hi - res.b_lo > tol_b) {
        const double mid = 0.5 * (res.b_lo + res.b_hi);
        if (mid <= res.b_lo || mid >= res.b_hi) break; // bracket at rounding limit
        ++res.iterations;

        ClassifyOpts pass = opts;
        ShotTag tag = ShotTag::Undecided;
        std::optional<Event> ev;
        for (int attempt = 0; attempt <= 3; ++attempt) {
            Classification c = classify(P, mid, pass);
            tag = c.tag;
            ev = c.event;
            if (tag != ShotTag::Undecided) break;
            pass.r_max *= 2.0;
            pass.tail_threshold *= 0.1;
        }
        if (tag == ShotTag::Undecided) {
            // Deep in the funnel both ways; the unstable coordinate q + q_r
            // tells which side of the decaying manifold the shot is on.
            double drift = 0.0;
            if (ev) drift = ev->state.q + ev->state.qr;
            tag = drift >= 0.0 ? ShotTag::Splus : ShotTag::Sminus;
            ++res.undecided_assignments;
        }
        if (tag == ShotTag::Splus) res.b_lo = mid;
        else res.b_hi = mid;
    }
    res.b0 = 0.5 * (res.b_lo + res.b_hi);
    return res;
}

ScanResult scan_bracket(const Params& P, double b_lo, double b_hi, int n,
                        const ClassifyOpts& opts) {
    if (n < 2 || !(b_lo > 0.0) || !(b_hi > b_lo))
        throw validation_error("scan_bracket needs 0 < b_lo < b_hi and n >= 2");
    ScanResult out;
    out.entries.reserve(n);
    const double ratio = std::log(b_hi / b_lo);
    for (int i = 0; i < n; ++i) {
        ScanEntry e;
        e.b = b_lo * std::exp(ratio * double(i) / double(n - 1));
        e.r_event = std::numeric_limits<double>::quiet_NaN();
        try {
            Classification c = classify(P, e.b, opts);
            e.tag = c.tag;
            if (c.event) e.r_event = c.event->r;
        } catch (const integration_error& err) {
            e.error = err.what();
        }
        out.entries.push_back(std::move(e));
    }
    out.monotone = true;
    bool seen_minus = false;
    for (const auto& e : out.entries) {
        if (e.tag == ShotTag::Sminus) seen_minus = true;
        else if (e.tag == ShotTag::Splus && seen_minus) out.monotone = false;
    }
    return out;
}

VariationalResult variational_qb(const Params& P, double b, const ClassifyOpts& opts) {
    ClassifyOpts with_v = opts;
    with_v.with_variational = true;
    Classification c = classify(P, b, with_v);
    VariationalResult res;
    res.zero_count = 0;
    const auto& vq = c.traj.vq;
    for (std::size_t i = 1; i < vq.size(); ++i) {
        if (vq[i - 1] > 0.0 && vq[i] <= 0.0) ++res.zero_count;
        else if (vq[i - 1] < 0.0 && vq[i] >= 0.0) ++res.zero_count;
    }
    res.vq_end = vq.empty() ? 0.0 : vq.back();
    res.r_end = c.traj.r.empty() ? 0.0 : c.traj.r.back();
    res.traj = std::move(c.traj);
    return res;
}

TailSeries TailSeries::make(const Params& P) {
    TailSeries t;
    t.d = P.d;
    const double b2 = P.beta() * P.beta(); // 4 nu^2
    t.a[0] = 1.0;
    for (int k = 1; k <= 4; ++k) {
        const double odd = double(2 * k - 1);
        t.a[k] = t.a[k - 1] * (b2 - odd * odd) / (8.0 * double(k));
    }
    return t;
}

double TailSeries::value(double r, double c) const {
    double s = a[4];
    for (int k = 3; k >= 0; --k) s = s / r + a[k]; // Horner over a_k r^{-k}
    return c * std::pow(r, -0.5 * double(d - 1)) * std::exp(-r) * s;
}

double TailSeries::deriv(double r, double c) const {
    double s = a[4];
    for (int k = 3; k >= 0; --k) s = s / r + a[k];
    double sp = 0.0; // d/dr sum a_k r^{-k}
    for (int k = 4; k >= 1; --k) sp = sp / r + (-double(k)) * a[k];
    sp /= r * r; // each term -k a_k r^{-k-1}
    const double head = std::pow(r, -0.5 * double(d - 1)) * std::exp(-r);
    return c * head * (sp + s * (-1.0 - 0.5 * double(d - 1) / r));
}

double TailSeries::log_factor(double r) const {
    double s = a[4];
    for (int k = 3; k >= 0; --k) s = s / r + a[k];
    return std::log(s);
}

TailFit fit_tail_constant(const Params& P, const Trajectory& traj, double win_lo, double win_hi) {
    if (!(win_lo > 0.0) || !(win_hi > win_lo))
        throw validation_error("fit_tail_constant: bad window");
    const TailSeries series = TailSeries::make(P);
    std::vector<double> xs, ys;
    TailFit fit{};
    fit.decay_ok = true;
    double first_dev = 0.0, last_dev = 0.0;
    for (std::size_t i = 0; i < traj.r.size(); ++i) {
        const double r = traj.r[i];
        if (r < win_lo || r > win_hi) continue;
        const double q = traj.q[i];
        if (!(q > 0.0)) {
            fit.decay_ok = false;
            continue;
        }
        const double ratio = traj.qr[i] / q;
        if (ratio < -1.5 || ratio > -0.5) fit.decay_ok = false;
        const double dev = std::fabs(ratio + 1.0);
        if (xs.empty()) first_dev = dev;
        last_dev = dev;
        xs.push_back(-r - 0.5 * double(P.d - 1) * std::log(r) + series.log_factor(r));
        ys.push_back(std::log(q));
    }
    fit.n_points = int(xs.size());
    if (fit.n_points < 8)
        throw validation_error("fit_tail_constant: fewer than 8 usable samples in window");
    double mean = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) mean += ys[i] - xs[i];
    mean /= double(xs.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double resid = ys[i] - xs[i] - mean;
        ss += resid * resid;
    }
    fit.c0 = std::exp(mean);
    fit.residual = std::sqrt(ss / double(xs.size()));
    fit.dev_lo = first_dev;
    fit.dev_hi = last_dev;
    return fit;
}

namespace {

// Outward shot evaluated at r_match, with the exact b-derivative from the
// co-integrated linearized system.
struct OutwardProbe {
    double q, qr, vq, vqr;
};

OutwardProbe probe_outward(const Params& P, double b, double r_match, double rtol) {
    const OriginData o = origin_expansion(P, b, default_r0(P));
    IntegrateOpts io;
    io.r_max = r_match;
    io.rtol = rtol;
    io.tail_threshold = 0.0;
    io.detect_q_zero = io.detect_qr_zero = false;
    io.with_variational = true;
    std::vector<double> nodes{r_match};
    io.record_nodes = &nodes;
    Trajectory t = integrate_trajectory(P, o.state, o.vq0, o.vqr0, io);
    if (!t.valid || t.r.empty() || t.r.back() != r_match)
        throw integration_error("outward probe failed to reach the match radius");
    return {t.q.back(), t.qr.back(), t.vq.back(), t.vqr.back()};
}

struct InwardProbe {
    double q, qr;
};

InwardProbe probe_inward(const Params& P, const TailSeries& series, double c, double r_launch,
                         double r_match, double rtol) {
    OdeState start{r_launch, series.value(r_launch, c), series.deriv(r_launch, c)};
    std::vector<double> nodes{r_match};
    Trajectory t = integrate_inward(P, start, r_match, &nodes, rtol);
    if (!t.valid || t.r.empty() || t.r.front() != r_match)
        throw integration_error("inward probe failed to reach the match radius");
    return {t.q.front(), t.qr.front()};
}

} // namespace

MatchedTails match_tails(const Params& P, double b_init, const MatchOpts& opts) {
    if (!(b_init > 0.0)) throw validation_error("match_tails requires b_init > 0");
    const TailSeries series = TailSeries::make(P);

    double b = b_init;
    OutwardProbe out = probe_outward(P, b, opts.r_match, opts.rtol);
    double c = out.q / (series.value(opts.r_match, 1.0)); // crude scale to start
    {
        // better start: scale by the inward solution at the match point
        InwardProbe probe1 = probe_inward(P, series, 1.0, opts.r_launch, opts.r_match, opts.rtol);
        if (probe1.q != 0.0) c = out.q / probe1.q;
    }

    MatchedTails res{};
    double mismatch = 0.0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        InwardProbe in = probe_inward(P, series, c, opts.r_launch, opts.r_match, opts.rtol);
        const double f1 = out.q - in.q;
        const double f2 = out.qr - in.qr;
        const double scale = std::fabs(out.q) + std::fabs(out.qr) + 1e-300;
        mismatch = (std::fabs(f1) + std::fabs(f2)) / scale;
        if (mismatch < 50.0 * opts.rtol) break;

        // Jacobian: outward column exact (variational), inward column by a
        // relative finite difference in c.
        const double dc = std::max(1e-7 * std::fabs(c), 1e-30);
        InwardProbe in2 = probe_inward(P, series, c + dc, opts.r_launch, opts.r_match, opts.rtol);
        const double j11 = out.vq, j12 = -(in2.q - in.q) / dc;
        const double j21 = out.vqr, j22 = -(in2.qr - in.qr) / dc;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det))
            throw convergence_error("match_tails: singular Jacobian");
        const double db = (-f1 * j22 + f2 * j12) / det;
        const double dcc = (-j11 * f2 + j21 * f1) / det;
        b += db;
        c += dcc;
        if (!(b > 0.0) || !std::isfinite(b) || !std::isfinite(c))
            throw convergence_error("match_tails: iteration left the domain");
        out = probe_outward(P, b, opts.r_match, opts.rtol);
    }
    if (it == opts.max_iter && mismatch > 1e-6)
        throw convergence_error("match_tails did not converge");

    res.b0 = b;
    res.c0 = c;
    res.mismatch = mismatch;
    res.iterations = it;
    OdeState start{opts.r_launch, series.value(opts.r_launch, c), series.deriv(opts.r_launch, c)};
    res.inward = integrate_inward(P, start, opts.r_match, nullptr, opts.rtol);
    return res;
}

} // namespace hardyq
