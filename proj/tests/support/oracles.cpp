#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

// State y = (q, dq/ds) with s = ln r; the radial equation becomes
// q_ss = (2-d) q_s + a q + r^2 (q - |q|^p q).
struct LogRhs {
    const hardyq::Params& P;
    void operator()(double s, const double y[2], double dy[2]) const {
        const double r2 = std::exp(2.0 * s);
        const double q = y[0];
        dy[0] = y[1];
        dy[1] = (2.0 - P.d) * y[1] + P.a * q + r2 * (q - std::pow(std::fabs(q), P.p) * q);
    }
};

void rk4_step(const LogRhs& f, double s, double h, double y[2]) {
    double k1[2], k2[2], k3[2], k4[2], tmp[2];
    f(s, y, k1);
    tmp[0] = y[0] + 0.5 * h * k1[0];
    tmp[1] = y[1] + 0.5 * h * k1[1];
    f(s + 0.5 * h, tmp, k2);
    tmp[0] = y[0] + 0.5 * h * k2[0];
    tmp[1] = y[1] + 0.5 * h * k2[1];
    f(s + 0.5 * h, tmp, k3);
    tmp[0] = y[0] + h * k3[0];
    tmp[1] = y[1] + h * k3[1];
    f(s + h, tmp, k4);
    y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
}

// Tridiagonal solve, overwrites x with the solution of (sub, diag, super) x = rhs.
void thomas(std::vector<double> sub, std::vector<double> diag, std::vector<double> super,
            std::vector<double>& x) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i - 1] / diag[i - 1];
        diag[i] -= m * super[i - 1];
        x[i] -= m * x[i - 1];
    }
    x[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = (x[i] - super[i] * x[i + 1]) / diag[i];
}

} // namespace

Tag classify_rk4(const hardyq::Params& P, double b, double r0, double h, double r_max,
                 double tail) {
    LogRhs f{P};
    const double g0 = P.gamma0();
    double s = std::log(r0);
    const double s_end = std::log(r_max);
    double y[2] = {b * std::pow(r0, -g0), -g0 * b * std::pow(r0, -g0)};
    const double sgn = b >= 0 ? 1.0 : -1.0;
    while (s < s_end) {
        rk4_step(f, s, h, y);
        s += h;
        const double q = sgn * y[0];
        const double v = sgn * y[1];
        if (q <= 0.0) return Tag::Sminus;
        if (q > 1e8) return Tag::Splus;
        if (v >= 0.0 && q > tail) return Tag::Splus;
    }
    return Tag::Undecided;
}

Relaxation relax_ground_state(const hardyq::Params& P, double r_min, double r_max, int n,
                              int max_iter, double tol) {
    Relaxation out;
    const int m = n + 1;
    const double s0 = std::log(r_min), s1 = std::log(r_max);
    const double h = (s1 - s0) / n;
    out.r.resize(m);
    std::vector<double> r2(m);
    for (int i = 0; i < m; ++i) {
        out.r[i] = std::exp(s0 + i * h);
        r2[i] = out.r[i] * out.r[i];
    }

    // L q = q^{p+1} with L = -(q_ss + (d-2) q_s)/r^2 + (a/r^2 + 1);
    // Robin q_s = -gamma0 q at the inner edge (power-law behavior), Dirichlet
    // at the far edge where the state is exponentially small.
    const double g0 = P.gamma0();
    std::vector<double> sub(m - 1), diag(m), super(m - 1);
    for (int i = 0; i < m; ++i) {
        const double ih2 = 1.0 / (h * h * r2[i]);
        const double id2 = (P.d - 2.0) / (2.0 * h * r2[i]);
        diag[i] = 2.0 * ih2 + P.a / r2[i] + 1.0;
        if (i > 0) sub[i - 1] = -ih2 + id2;
        if (i < m - 1) super[i] = -ih2 - id2;
    }
    {
        // Ghost elimination q_{-1} = q_1 + 2 h gamma0 q_0.
        const double ih2 = 1.0 / (h * h * r2[0]);
        const double id2 = (P.d - 2.0) / (2.0 * h * r2[0]);
        const double ghost = -ih2 + id2;
        diag[0] += ghost * 2.0 * h * g0;
        super[0] += ghost;
    }
    diag[m - 1] = 1.0;
    sub[m - 2] = 0.0; // Dirichlet far row

    std::vector<double> q(m), w(m), rhs(m);
    for (int i = 0; i < m; ++i)
        q[i] = 2.0 * std::pow(out.r[i], -g0) * std::exp(-out.r[i]);

    auto weighted = [&](const std::vector<double>& u, const std::vector<double>& v) {
        // trapezoid of u v r^d in s
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
            const double c = (i == 0 || i == m - 1) ? 0.5 : 1.0;
            acc += c * u[i] * v[i] * std::pow(out.r[i], P.d) * h;
        }
        return acc;
    };
    auto apply_L = [&](const std::vector<double>& u, std::vector<double>& Lu) {
        for (int i = 0; i < m; ++i) {
            double lo = i > 0 ? sub[i - 1] * u[i - 1] : 0.0;
            double hi = i < m - 1 ? super[i] * u[i + 1] : 0.0;
            Lu[i] = lo + diag[i] * u[i] + hi;
        }
    };

    const double alpha = (P.p + 1.0) / P.p;
    std::vector<double> Lq(m);
    for (int it = 0; it < max_iter; ++it) {
        for (int i = 0; i < m; ++i)
            rhs[i] = std::pow(std::fabs(q[i]), P.p) * q[i];
        rhs[m - 1] = 0.0;
        apply_L(q, Lq);
        const double num = weighted(Lq, q);
        const double den = weighted(rhs, q);
        if (den <= 0.0) throw std::runtime_error("relaxation lost positivity");
        const double S = num / den;
        w = rhs;
        thomas(sub, diag, super, w);
        const double fac = std::pow(S, alpha);
        double diff = 0.0, scale = 0.0;
        for (int i = 0; i < m; ++i) {
            const double next = fac * w[i];
            diff += (next - q[i]) * (next - q[i]);
            scale += next * next;
            q[i] = next;
        }
        out.iterations = it + 1;
        if (std::sqrt(diff / scale) < tol) {
            out.converged = true;
            break;
        }
    }

    out.q = q;
    out.b0 = std::pow(out.r[0], g0) * q[0];
    out.mass = weighted(q, q);
    std::vector<double> qp2(m), hardy(m);
    for (int i = 0; i < m; ++i) qp2[i] = std::pow(std::fabs(q[i]), P.p) * q[i];
    out.lp = weighted(qp2, q);
    // q_r = q_s / r by centered differences (one-sided at the ends)
    std::vector<double> qr(m);
    for (int i = 0; i < m; ++i) {
        double qs;
        if (i == 0)
            qs = (q[1] - q[0]) / h;
        else if (i == m - 1)
            qs = (q[m - 1] - q[m - 2]) / h;
        else
            qs = (q[i + 1] - q[i - 1]) / (2.0 * h);
        qr[i] = qs / out.r[i];
    }
    std::vector<double> kin(m);
    for (int i = 0; i < m; ++i) kin[i] = qr[i] * qr[i] + P.a * q[i] * q[i] / r2[i];
    std::vector<double> ones(m, 1.0);
    out.kinetic_a = weighted(kin, ones);
    out.energy = 0.5 * out.kinetic_a - out.lp / (P.p + 2.0);
    return out;
}

} // namespace oracle
