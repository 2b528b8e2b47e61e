#include "hardyq/evolve.hpp"

#include "hardyq/errors.hpp"
#include "hardyq/kernels.hpp"
#include "hardyq/tridiag.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>

namespace hardyq {

namespace {

std::vector<double> row_dl(const SectorOperator& A) {
    std::vector<double> v(A.size() - 1);
    for (std::size_t i = 0; i + 1 < A.size(); ++i) v[i] = A.dl[i] / A.g.w[i + 1];
    return v;
}
std::vector<double> row_dg(const SectorOperator& A) {
    std::vector<double> v(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) v[i] = A.dg[i] / A.g.w[i];
    return v;
}
std::vector<double> row_du(const SectorOperator& A) {
    std::vector<double> v(A.size() - 1);
    for (std::size_t i = 0; i + 1 < A.size(); ++i) v[i] = A.du[i] / A.g.w[i];
    return v;
}

// Centered derivative samples on the (smoothly stretched) grid.
std::vector<double> fd_deriv(const RadialGrid& g, const std::vector<double>& f) {
    const std::size_t n = f.size();
    std::vector<double> df(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = g.r[i] - g.r[i - 1], hr = g.r[i + 1] - g.r[i];
        df[i] = (f[i + 1] * hl * hl - f[i - 1] * hr * hr + f[i] * (hr * hr - hl * hl)) /
                (hl * hr * (hl + hr));
    }
    df[0] = (f[1] - f[0]) / (g.r[1] - g.r[0]);
    df[n - 1] = (f[n - 1] - f[n - 2]) / (g.r[n - 1] - g.r[n - 2]);
    return df;
}

std::vector<cplx> fd_deriv_c(const RadialGrid& g, const std::vector<cplx>& f) {
    const std::size_t n = f.size();
    std::vector<cplx> df(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = g.r[i] - g.r[i - 1], hr = g.r[i + 1] - g.r[i];
        df[i] = (f[i + 1] * (hl * hl) - f[i - 1] * (hr * hr) + f[i] * (hr * hr - hl * hl)) /
                (hl * hr * (hl + hr));
    }
    df[0] = (f[1] - f[0]) / (g.r[1] - g.r[0]);
    df[n - 1] = (f[n - 1] - f[n - 2]) / (g.r[n - 1] - g.r[n - 2]);
    return df;
}

// Minimal complex arithmetic over __float128 for the standing-orbit stepper.
// std::complex is only specified for the three standard floating types.
struct qc {
    __float128 re, im;
};
inline qc operator+(qc a, qc b) { return {a.re + b.re, a.im + b.im}; }
inline qc operator-(qc a, qc b) { return {a.re - b.re, a.im - b.im}; }
inline qc operator*(qc a, qc b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline qc operator*(__float128 s, qc a) { return {s * a.re, s * a.im}; }
inline qc qinv(qc a) {
    const __float128 d = a.re * a.re + a.im * a.im;
    return {a.re / d, -a.im / d};
}

void thomas_q(std::vector<__float128>& dl, std::vector<__float128>& dg,
              const std::vector<__float128>& du, std::vector<__float128>& b) {
    const std::size_t n = dg.size();
    for (std::size_t i = 1; i < n; ++i) {
        const __float128 m = dl[i - 1] / dg[i - 1];
        dg[i] -= m * du[i - 1];
        b[i] -= m * b[i - 1];
    }
    b[n - 1] /= dg[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1]) / dg[i];
}

// Newton-refine the stationary state against the row-form matrix the stepper
// applies, in extended precision. The standing orbit is the fixed point of
// exactly that matrix; a state correct to double still carries ~1e-13 of the
// growing mode, which the e0 instability lifts to O(1) by t ~ 30/e0.
std::vector<__float128> polish_row_q(const Params& P, const std::vector<double>& adl,
                                     const std::vector<double>& adg,
                                     const std::vector<double>& adu,
                                     const std::vector<double>& q0) {
    const std::size_t n = q0.size();
    std::vector<__float128> q(n), F(n), jl(n - 1), jg(n), ju(n - 1);
    for (std::size_t i = 0; i < n; ++i) q[i] = q0[i];
    for (int it = 0; it < 4; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            __float128 y = (__float128(adg[i]) + 1.0) * q[i];
            if (i) y += __float128(adl[i - 1]) * q[i - 1];
            if (i + 1 < n) y += __float128(adu[i]) * q[i + 1];
            const __float128 ap = powq(fabsq(q[i]), __float128(P.p));
            F[i] = y - ap * q[i];
            jg[i] = __float128(adg[i]) + 1.0 - (P.p + 1.0) * ap;
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            jl[i] = adl[i];
            ju[i] = adu[i];
        }
        thomas_q(jl, jg, ju, F);
        for (std::size_t i = 0; i < n; ++i) q[i] -= F[i];
    }
    return q;
}

} // namespace

std::vector<double> polish_stationary(const Params& P, const SectorOperator& A,
                                      std::vector<double> q, double tol, int max_iter,
                                      double* residual_out, int* iters_out) {
    const std::size_t n = q.size();
    const double scale = std::sqrt(kernels::dot3(n, A.g.w.data(), q.data(), q.data()));
    std::vector<double> F(n);
    // Flux-form residual in the w metric. Cancellation junk from the stiff
    // inner rows floors any measurable residual near 1e-7 on this grading,
    // so convergence is gated on the Newton step, which settles at the
    // rounding level of the iterate itself; the residual bound is a sanity
    // check against converging to the wrong branch.
    auto residual = [&](const std::vector<double>& v) {
        A.apply_w(v.data(), F.data());
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            F[i] += A.g.w[i] * (v[i] - std::pow(std::fabs(v[i]), P.p) * v[i]);
            r2 += F[i] * F[i] / A.g.w[i];
        }
        return std::sqrt(r2) / scale;
    };
    double res = residual(q);
    double step_rel = 1.0;
    int it = 0;
    for (; it < max_iter && step_rel > tol; ++it) {
        std::vector<double> jl(A.dl), jg(A.dg), ju(A.du);
        for (std::size_t i = 0; i < n; ++i)
            jg[i] += A.g.w[i] * (1.0 - (P.p + 1.0) * std::pow(std::fabs(q[i]), P.p));
        std::vector<double> step = solve_tridiag(jl, jg, ju, F);
        step_rel =
            std::sqrt(kernels::dot3(n, A.g.w.data(), step.data(), step.data())) / scale;
        double damp = 1.0;
        for (int k = 0; k < 6; ++k) {
            std::vector<double> trial = q;
            kernels::axpy(n, -damp, step.data(), trial.data());
            const double rt = residual(trial);
            if (rt < res || rt < 1e-5 || damp < 0.1) {
                q = trial;
                res = rt;
                break;
            }
            damp *= 0.5;
        }
    }
    if (step_rel > tol || res > 1e-5)
        throw convergence_error("stationary polish did not reach the discrete solution");
    if (residual_out) *residual_out = res;
    if (iters_out) *iters_out = it;
    return q;
}

EvolveSetup make_evolve_setup(const Params& P, const GroundStateProfile& gs) {
    EvolveSetup S{P, gs.grid};
    const std::size_t n = gs.grid.size();
    S.A = assemble_radial(P, gs.grid);
    S.Q = polish_stationary(P, S.A, gs.Q, 1e-13, 40, &S.polish_residual, &S.polish_iterations);
    S.Qp.resize(n);
    for (std::size_t i = 0; i < n; ++i) S.Qp[i] = std::pow(std::fabs(S.Q[i]), P.p);
    S.massQ = kernels::dot3(n, gs.grid.w.data(), S.Q.data(), S.Q.data());
    std::vector<double> t(n);
    S.A.apply_w(S.Q.data(), t.data());
    S.kinQ = kernels::dot(n, S.Q.data(), t.data());
    std::vector<double> qp1(n);
    for (std::size_t i = 0; i < n; ++i) qp1[i] = S.Qp[i] * S.Q[i] * S.Q[i];
    S.cQ = kernels::dot(n, gs.grid.w.data(), qp1.data());

    SectorOperator L1 = assemble_sector(P, gs.grid, 0, P.p + 1.0, S.Qp);
    SectorOperator L2 = assemble_sector(P, gs.grid, 0, 1.0, S.Qp);
    std::vector<double> dQ = fd_deriv(gs.grid, S.Q), Q1(n);
    for (std::size_t i = 0; i < n; ++i) Q1[i] = (2.0 / P.p) * S.Q[i] + gs.grid.r[i] * dQ[i];
    S.dich = dichotomy_mode(L1, L2, S.Q, Q1);
    return S;
}

double kinetic_of(const EvolveSetup& S, const std::vector<cplx>& f) {
    const std::size_t n = f.size();
    std::vector<cplx> t(n);
    kernels::tridiag_apply(n, S.A.dl.data(), S.A.dg.data(), S.A.du.data(), f.data(), t.data());
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += f[i].real() * t[i].real() + f[i].imag() * t[i].imag();
    return s;
}

Modulation modulate(const EvolveSetup& S, const std::vector<cplx>& f) {
    const std::size_t n = f.size();
    Modulation m;
    cplx c(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        c += S.g.w[i] * S.Qp[i] * S.Q[i] * f[i]; // pairing against (A+1)Q = Q^{p+1}
    m.theta = std::arg(c);
    const cplx rot = std::exp(cplx(0.0, -m.theta));
    m.alpha = (c * rot).real() / S.cQ - 1.0;
    m.ut.resize(n);
    for (std::size_t i = 0; i < n; ++i) m.ut[i] = rot * f[i] - (1.0 + m.alpha) * S.Q[i];
    m.dist = std::fabs(kinetic_of(S, f) - S.kinQ);
    return m;
}

std::vector<cplx> nonlinear_remainder(const EvolveSetup& S, const std::vector<cplx>& v) {
    const std::size_t n = v.size();
    std::vector<cplx> full(n), out(n);
    for (std::size_t i = 0; i < n; ++i) full[i] = S.Q[i] + v[i];
    std::vector<cplx> nl(n);
    kernels::nonlin_pow(n, full.data(), S.P.p, nl.data());
    for (std::size_t i = 0; i < n; ++i) {
        const cplx lin(S.Qp[i] * S.Q[i] + (S.P.p + 1.0) * S.Qp[i] * v[i].real(),
                       S.Qp[i] * v[i].imag());
        out[i] = cplx(0.0, 1.0) * (nl[i] - lin);
    }
    return out;
}

namespace {
// Quintic transition 1 -> 0 on [0,1] with two flat derivatives at each end.
inline double sm(double t) { return 1.0 + t * t * t * (-10.0 + t * (15.0 - 6.0 * t)); }
inline double sm1(double t) { return t * t * (-30.0 + t * (60.0 - 30.0 * t)); }
inline double sm2(double t) { return t * (-60.0 + t * (180.0 - 120.0 * t)); }
inline double sm3(double t) { return -60.0 + t * (360.0 - 360.0 * t); }
} // namespace

double VirialWeight::phi(double r) const {
    const double rho = r / R;
    if (rho <= 1.0) return r * r;
    if (rho >= 2.0) return R * R * (16.0 / 7.0);
    const double t = rho - 1.0;
    const double p = 1.0 + t * (2.0 + t * (1.0 + t * t * (-5.0 + t * (2.0 + t * (3.0 - (12.0 / 7.0) * t)))));
    return R * R * p;
}

double VirialWeight::dphi(double r) const {
    const double rho = r / R;
    if (rho <= 1.0) return 2.0 * r;
    if (rho >= 2.0) return 0.0;
    return 2.0 * r * sm(rho - 1.0);
}

double VirialWeight::d2phi(double r) const {
    const double rho = r / R;
    if (rho <= 1.0) return 2.0;
    if (rho >= 2.0) return 0.0;
    const double t = rho - 1.0;
    return 2.0 * sm(t) + 2.0 * rho * sm1(t);
}

double VirialWeight::lap(double r, int d) const {
    return d2phi(r) + (d - 1.0) * dphi(r) / r;
}

double VirialWeight::bilap(double r, int d) const {
    const double rho = r / R;
    if (rho <= 1.0 || rho >= 2.0) return 0.0;
    const double t = rho - 1.0;
    const double g1 = 2.0 * (d + 1.0) * sm1(t) + 2.0 * rho * sm2(t);
    const double g2 = 2.0 * (d + 2.0) * sm2(t) + 2.0 * rho * sm3(t);
    return (g2 + (d - 1.0) * g1 / rho) / (R * R);
}

VirialSample virial_sample(const EvolveSetup& S, const VirialWeight& W,
                           const std::vector<cplx>& u) {
    const std::size_t n = u.size();
    const RadialGrid& g = S.g;
    std::vector<double> a2(n);
    kernels::abs2(n, u.data(), a2.data());
    std::vector<cplx> ur = fd_deriv_c(g, u);

    VirialSample out;
    for (std::size_t i = 0; i < n; ++i) {
        out.VR += g.w[i] * W.phi(g.r[i]) * a2[i];
        out.Vdot += 2.0 * g.w[i] * W.dphi(g.r[i]) *
                    (u[i].real() * ur[i].imag() - u[i].imag() * ur[i].real());
        const double r = g.r[i];
        if (r <= W.R) continue;
        const double urr2 = std::norm(ur[i]);
        const double pp2 = a2[i] * std::pow(a2[i], 0.5 * S.P.p);
        double term = 4.0 * (W.d2phi(r) - 2.0) * urr2;
        term += (2.0 * S.P.p / (S.P.p + 2.0)) * (2.0 * S.P.d - W.lap(r, S.P.d)) * pp2;
        term -= W.bilap(r, S.P.d) * a2[i];
        term -= 4.0 * S.P.a * ((r * W.dphi(r) - 2.0 * r * r) / (r * r * r * r)) * a2[i];
        out.AR += g.w[i] * term;
    }
    return out;
}

const char* run_kind_name(RunKind k) {
    switch (k) {
        case RunKind::Standing: return "standing";
        case RunKind::StableMinus: return "stable-minus";
        case RunKind::StablePlus: return "stable-plus";
        case RunKind::UnstableMinus: return "unstable-minus";
        case RunKind::UnstablePlus: return "unstable-plus";
    }
    return "?";
}

EvolveResult run_evolution(const EvolveSetup& S, RunKind kind, const EvolveOpts& opts) {
    if (opts.dt <= 0.0 || opts.t_end <= 0.0 || opts.record_every < 1)
        throw validation_error("evolution needs positive dt, t_end and record stride");
    const std::size_t n = S.g.size();

    std::vector<cplx> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = S.Q[i];
    if (kind != RunKind::Standing) {
        const bool stable = (kind == RunKind::StableMinus || kind == RunKind::StablePlus);
        const double v2sign = stable ? -1.0 : 1.0; // decaying pair carries -v2
        const bool want_low = (kind == RunKind::StableMinus || kind == RunKind::UnstableMinus);
        for (int attempt = 0; attempt < 2; ++attempt) {
            const double s = attempt == 0 ? 1.0 : -1.0;
            for (std::size_t i = 0; i < n; ++i)
                u[i] = S.Q[i] + opts.delta * s *
                                    cplx(S.dich.v1[i], v2sign * S.dich.v2[i]);
            const bool low = kinetic_of(S, u) < S.kinQ;
            if (low == want_low) break;
        }
    }

    const auto adl = row_dl(S.A), adg = row_dg(S.A), adu = row_du(S.A);
    const long nsteps = std::lround(opts.t_end / opts.dt);
    EvolveResult out;
    out.kind = kind;
    out.delta = kind == RunKind::Standing ? 0.0 : opts.delta;
    VirialWeight W{opts.virial_R};

    // The stepper works in the frame co-rotating with the standing wave:
    // i v_t = (A + 1) v - |v|^p v, lab field u = e^{it} v. The polished
    // profile is then a fixed point of the discrete step instead of an orbit
    // the midpoint rule tracks with an O(dt^3) defect per step; any such
    // defect is amplified by e^{e0 t} and would dominate the standing-run
    // distance. Every recorded quantity except theta is phase invariant, so
    // it is evaluated on v directly; theta gets the frame rotation back.
    std::vector<double> a2(n);
    auto record = [&](double t) {
        kernels::abs2(n, u.data(), a2.data());
        const double mass = kernels::dot(n, S.g.w.data(), a2.data());
        std::vector<double> pw(n);
        for (std::size_t i = 0; i < n; ++i) pw[i] = a2[i] * std::pow(a2[i], 0.5 * S.P.p);
        const double lp = kernels::dot(n, S.g.w.data(), pw.data());
        const double energy = 0.5 * kinetic_of(S, u) - lp / (S.P.p + 2.0);
        Modulation m = modulate(S, u);
        VirialSample vs = virial_sample(S, W, u);
        out.series.t.push_back(t);
        out.series.theta.push_back(m.theta + t);
        out.series.alpha.push_back(m.alpha);
        out.series.dist.push_back(m.dist);
        out.series.mass.push_back(mass);
        out.series.energy.push_back(energy);
        out.series.VR.push_back(vs.VR);
        out.series.Vdot.push_back(vs.Vdot);
        out.series.AR.push_back(vs.AR);
    };

    if (kind == RunKind::Standing) {
        // Roundoff is the only thing that can seed the growing mode here, and
        // double roundoff is already too much: 1e-16 e^{e0 t} passes any
        // usable tolerance before t = 6 for canonical e0. Step in quad.
        const std::vector<__float128> qq = polish_row_q(S.P, adl, adg, adu, S.Q);
        std::vector<qc> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = {qq[i], 0.0};
        auto sync = [&] {
            for (std::size_t i = 0; i < n; ++i)
                u[i] = cplx(double(v[i].re), double(v[i].im));
        };
        sync();
        record(0.0);

        // Prefactored no-pivot LU of (i/dt) I - (A+1)/2 in row form. The
        // matrix inherits weak diagonal dominance from the flux stencil plus
        // the i/dt shift, so elimination without pivoting is safe.
        std::vector<qc> mu(n - 1), mult(n - 1), minv(n);
        {
            std::vector<qc> mg(n);
            const __float128 rdt = 1.0 / __float128(opts.dt);
            for (std::size_t i = 0; i < n; ++i)
                mg[i] = {-0.5 * (__float128(adg[i]) + 1.0), rdt};
            for (std::size_t i = 0; i + 1 < n; ++i)
                mu[i] = {-0.5 * __float128(adu[i]), 0.0};
            minv[0] = qinv(mg[0]);
            for (std::size_t i = 1; i < n; ++i) {
                mult[i - 1] = qc{-0.5 * __float128(adl[i - 1]), 0.0} * minv[i - 1];
                mg[i] = mg[i] - mult[i - 1] * mu[i - 1];
                minv[i] = qinv(mg[i]);
            }
        }
        const double um = std::sqrt(S.massQ);
        const __float128 ph = 0.5 * S.P.p;
        const __float128 rdt = 1.0 / __float128(opts.dt);
        std::vector<qc> au(n), rhs(n), vnew(n), b(n);
        for (long step = 1; step <= nsteps; ++step) {
            for (std::size_t i = 0; i < n; ++i) {
                qc y = (__float128(adg[i]) + 1.0) * v[i];
                if (i) y = y + __float128(adl[i - 1]) * v[i - 1];
                if (i + 1 < n) y = y + __float128(adu[i]) * v[i + 1];
                au[i] = y;
                rhs[i] = qc{-v[i].im * rdt, v[i].re * rdt} + 0.5 * au[i];
            }
            vnew = v;
            double change = 1.0;
            int it = 0;
            for (; it < opts.fp_max && change > opts.fp_tol; ++it) {
                __float128 diff2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const qc mid = 0.5 * (v[i] + vnew[i]);
                    const __float128 m2 = mid.re * mid.re + mid.im * mid.im;
                    const __float128 s =
                        S.P.p == 2.0 ? m2 : (S.P.p == 1.0 ? sqrtq(m2) : powq(m2, ph));
                    b[i] = rhs[i] - s * mid;
                }
                for (std::size_t i = 1; i < n; ++i) b[i] = b[i] - mult[i - 1] * b[i - 1];
                b[n - 1] = minv[n - 1] * b[n - 1];
                for (std::size_t i = n - 1; i-- > 0;)
                    b[i] = minv[i] * (b[i] - mu[i] * b[i + 1]);
                for (std::size_t i = 0; i < n; ++i) {
                    const qc d = b[i] - vnew[i];
                    diff2 += __float128(S.g.w[i]) * (d.re * d.re + d.im * d.im);
                }
                change = double(sqrtq(diff2)) / um;
                vnew.swap(b);
            }
            out.fp_iter_max = std::max(out.fp_iter_max, it);
            if (change > 1e-6) {
                out.truncated = true;
                out.t_truncated = double(step) * opts.dt;
                break;
            }
            v.swap(vnew);
            if (step % opts.record_every == 0) {
                sync();
                record(double(step) * opts.dt);
            }
        }
    } else {
        record(0.0);
        // Crank-Nicolson factor of (i/dt) I - (A+1)/2 in row form.
        std::vector<cplx> mdl(n - 1), mdg(n), mdu(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            mdl[i] = -0.5 * S.A.dl[i] / S.g.w[i + 1];
            mdu[i] = -0.5 * S.A.du[i] / S.g.w[i];
        }
        for (std::size_t i = 0; i < n; ++i)
            mdg[i] = cplx(0.0, 1.0 / opts.dt) - 0.5 * (S.A.dg[i] / S.g.w[i] + 1.0);
        ComplexTridiagLU M = ComplexTridiagLU::factor(mdl, mdg, mdu);

        std::vector<cplx> au(n), rhs(n), unew(n), mid(n), nl(n);
        for (long step = 1; step <= nsteps; ++step) {
            kernels::tridiag_apply(n, adl.data(), adg.data(), adu.data(), u.data(), au.data());
            const cplx idt(0.0, 1.0 / opts.dt);
            for (std::size_t i = 0; i < n; ++i) rhs[i] = idt * u[i] + 0.5 * (au[i] + u[i]);
            unew = u;
            double change = 1.0;
            int it = 0;
            kernels::abs2(n, u.data(), a2.data());
            const double unorm = std::sqrt(kernels::dot(n, S.g.w.data(), a2.data()));
            for (; it < opts.fp_max && change > opts.fp_tol; ++it) {
                for (std::size_t i = 0; i < n; ++i) mid[i] = 0.5 * (u[i] + unew[i]);
                kernels::nonlin_pow(n, mid.data(), S.P.p, nl.data());
                std::vector<cplx> b(n);
                for (std::size_t i = 0; i < n; ++i) b[i] = rhs[i] - nl[i];
                M.solve_inplace(b);
                double diff2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx d = b[i] - unew[i];
                    diff2 += S.g.w[i] * std::norm(d);
                }
                change = std::sqrt(diff2) / unorm;
                unew.swap(b);
            }
            out.fp_iter_max = std::max(out.fp_iter_max, it);
            if (change > 1e-6) {
                out.truncated = true;
                out.t_truncated = double(step) * opts.dt;
                break;
            }
            u.swap(unew);
            if (step % opts.record_every == 0) record(double(step) * opts.dt);
        }
    }

    const double m0 = out.series.mass.front();
    for (double m : out.series.mass)
        out.mass_drift = std::max(out.mass_drift, std::fabs(m - m0) / m0);
    out.dist_max = *std::max_element(out.series.dist.begin(), out.series.dist.end());
    out.dist_final = out.series.dist.back();
    return out;
}

double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y, double lo,
                     double hi, int* count) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    int m = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(y[i] >= lo && y[i] <= hi)) continue;
        const double ly = std::log(y[i]);
        st += t[i];
        sy += ly;
        stt += t[i] * t[i];
        sty += t[i] * ly;
        ++m;
    }
    if (count) *count = m;
    if (m < 3) return 0.0;
    const double det = m * stt - st * st;
    if (det == 0.0) return 0.0;
    return (m * sty - st * sy) / det;
}

} // namespace hardyq
