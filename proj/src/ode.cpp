#include "hardyq/ode.hpp"

#include <cmath>

namespace hardyq {

namespace {
inline double signed_power(double q, double expo) {
    // sign(q) |q|^expo, exactly odd in q
    return q >= 0.0 ? std::pow(q, expo) : -std::pow(-q, expo);
}
} // namespace

double rhs_qrr(const Params& P, double r, double q, double qr) {
    return -(double(P.d - 1) / r) * qr + (P.a / (r * r)) * q + q - signed_power(q, P.p + 1.0);
}

double rhs_qrr_prime(const Params& P, double r, double q, double qr) {
    const double qrr = rhs_qrr(P, r, q, qr);
    const double dFdr = double(P.d - 1) / (r * r) * qr - 2.0 * P.a / (r * r * r) * q;
    const double dFdq = P.a / (r * r) + 1.0 - (P.p + 1.0) * std::pow(std::fabs(q), P.p);
    const double dFdqr = -double(P.d - 1) / r;
    return dFdr + dFdq * qr + dFdqr * qrr;
}

double energy_H(const Params& P, double r, double q, double qr) {
    return 0.5 * qr * qr - 0.5 * (P.a / (r * r)) * q * q - 0.5 * q * q +
           std::pow(std::fabs(q), P.p + 2.0) / (P.p + 2.0);
}

PohozaevValues pohozaev(const Params& P, double r, double q, double qr) {
    const double H = energy_H(P, r, q, qr);
    const double rd = std::pow(r, double(P.d));
    const double H1 = 2.0 * rd * H + double(P.d - 2) * (rd / r) * q * qr;
    const double H2 = H1 + P.p / (P.p + 2.0) * rd * std::pow(std::fabs(q), P.p + 2.0);
    return {H1, H2};
}

double h1_prime(const Params& P, double r, double q, double qr) {
    (void)qr;
    const double c = (4.0 - P.p * double(P.d - 2)) / (P.p + 2.0);
    return std::pow(r, double(P.d - 1)) * (c * std::pow(std::fabs(q), P.p + 2.0) - 2.0 * q * q);
}

const char* event_name(EventKind k) {
    switch (k) {
        case EventKind::QZero: return "q_zero";
        case EventKind::QrZero: return "qr_zero";
        case EventKind::Escaped: return "escaped";
        case EventKind::TailEntered: return "tail_entered";
    }
    return "?";
}

Trajectory mirrored(const Trajectory& t) {
    Trajectory m = t;
    for (auto& v : m.q) v = -v;
    for (auto& v : m.qr) v = -v;
    for (auto& v : m.vq) v = -v;
    for (auto& v : m.vqr) v = -v;
    for (auto& e : m.events) {
        e.state.q = -e.state.q;
        e.state.qr = -e.state.qr;
    }
    return m;
}

} // namespace hardyq
