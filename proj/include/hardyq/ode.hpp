#pragma once

#include "hardyq/params.hpp"

#include <string>
#include <vector>

namespace hardyq {

struct OdeState {
    double r;
    double q;
    double qr;
};

// Right-hand side in the first-order form (q, qr)' = (qr, F(r,q,qr)):
//   F = -((d-1)/r) qr + (a/r^2) q + q - sign(q)|q|^{p+1}.
double rhs_qrr(const Params& P, double r, double q, double qr);

// d/dr of rhs_qrr along a solution; used for high-order local models.
double rhs_qrr_prime(const Params& P, double r, double q, double qr);

// Pointwise energy
//   H = qr^2/2 - (a/(2 r^2)) q^2 - q^2/2 + |q|^{p+2}/(p+2),
// strictly decreasing in r along solutions when a < 0.
double energy_H(const Params& P, double r, double q, double qr);

struct PohozaevValues {
    double H1; // 2 r^d H + (d-2) r^{d-1} q qr; positive between origin and first zero
    double H2; // H1 + (p/(p+2)) r^d |q|^{p+2}; equals -r^{d-1} q^2 (q1/q)'
};

PohozaevValues pohozaev(const Params& P, double r, double q, double qr);

// Integrand sign driver of H1': r^{d-1} ((4-p(d-2))/(p+2) |q|^{p+2} - 2 q^2).
// Changes sign exactly once along a trajectory that starts singular.
double h1_prime(const Params& P, double r, double q, double qr);

enum class EventKind { QZero, QrZero, Escaped, TailEntered };

const char* event_name(EventKind k);

struct Event {
    EventKind kind;
    double r;
    OdeState state; // state at the event radius
};

// Integrator output: strictly increasing radii, matched q/qr samples, and the
// terminating event if one fired. `valid` goes false on step-size underflow.
struct Trajectory {
    std::vector<double> r;
    std::vector<double> q;
    std::vector<double> qr;
    // Companion linearized-in-b solution, filled only when co-integrated.
    std::vector<double> vq;
    std::vector<double> vqr;
    std::vector<Event> events;
    bool valid = true;

    bool terminated() const { return !events.empty(); }
    const Event& last_event() const { return events.back(); }
    OdeState back_state() const { return {r.back(), q.back(), qr.back()}; }
};

// Exact mirror q -> -q (solutions come in odd pairs).
Trajectory mirrored(const Trajectory& t);

} // namespace hardyq
