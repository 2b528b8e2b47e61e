#include "hardyq/ode.hpp"

#include <doctest.h>

#include <cmath>

using hardyq::Params;

namespace {
const Params P3(3, 2.0, -0.1);
}

TEST_CASE("right-hand side worked value") {
    CHECK(hardyq::rhs_qrr(P3, 2.0, 1.0, -1.0) == doctest::Approx(0.975).epsilon(1e-15));
}

TEST_CASE("right-hand side is exactly odd in the solution") {
    for (double r : {0.01, 0.5, 1.0, 7.3}) {
        for (double q : {0.2, 1.0, 3.5}) {
            for (double qr : {-2.0, 0.0, 1.3}) {
                CHECK(hardyq::rhs_qrr(P3, r, -q, -qr) == -hardyq::rhs_qrr(P3, r, q, qr));
            }
        }
    }
}

TEST_CASE("rhs derivative matches a finite difference along the flow") {
    const double r = 1.7, q = 0.8, qr = -0.4;
    const double h = 1e-6;
    // advance (q, qr) one Euler micro-step to evaluate F along the solution curve
    auto F = [&](double rr, double qq, double qqr) { return hardyq::rhs_qrr(P3, rr, qq, qqr); };
    const double f0 = F(r, q, qr);
    const double fp = F(r + h, q + h * qr, qr + h * f0);
    const double fm = F(r - h, q - h * qr, qr - h * f0);
    const double fd = (fp - fm) / (2.0 * h);
    CHECK(hardyq::rhs_qrr_prime(P3, r, q, qr) == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("pointwise energy and its flux combinations at a reference state") {
    const double H = hardyq::energy_H(P3, 1.0, 1.0, 0.0);
    CHECK(H == doctest::Approx(-0.2).epsilon(1e-15));
    const auto ph = hardyq::pohozaev(P3, 1.0, 1.0, 0.0);
    CHECK(ph.H1 == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(ph.H2 == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("energy decreases along numerical solutions when a < 0") {
    // Forward Euler fine-step march from a generic state; H must not increase.
    double r = 0.3, q = 1.4, qr = -0.9;
    double h = 1e-5;
    double prev = hardyq::energy_H(P3, r, q, qr);
    for (int i = 0; i < 20000; ++i) {
        const double f = hardyq::rhs_qrr(P3, r, q, qr);
        q += h * qr;
        qr += h * f;
        r += h;
        const double now = hardyq::energy_H(P3, r, q, qr);
        CHECK(now <= prev + 1e-9);
        prev = now;
    }
}

TEST_CASE("flux driver changes sign exactly at the predicted amplitude") {
    // (4 - p(d-2))/(p+2) |q|^{p+2} = 2 q^2 at |q| = (2(p+2)/(4-p(d-2)))^{1/p}
    const double qc = std::pow(2.0 * (P3.p + 2.0) / (4.0 - P3.p * (P3.d - 2.0)), 1.0 / P3.p);
    CHECK(qc == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(hardyq::h1_prime(P3, 1.0, qc, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(hardyq::h1_prime(P3, 1.0, qc + 0.01, 0.0) > 0.0);
    CHECK(hardyq::h1_prime(P3, 1.0, qc - 0.01, 0.0) < 0.0);

    const Params P4(4, 1.2, -0.5);
    const double qc4 = std::pow(2.0 * (P4.p + 2.0) / (4.0 - P4.p * (P4.d - 2.0)), 1.0 / P4.p);
    CHECK(hardyq::h1_prime(P4, 2.0, qc4, 0.1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("event names are stable strings") {
    CHECK(std::string(hardyq::event_name(hardyq::EventKind::QZero)) == "q_zero");
    CHECK(std::string(hardyq::event_name(hardyq::EventKind::QrZero)) == "qr_zero");
    CHECK(std::string(hardyq::event_name(hardyq::EventKind::Escaped)) == "escaped");
    CHECK(std::string(hardyq::event_name(hardyq::EventKind::TailEntered)) == "tail_entered");
}

TEST_CASE("mirroring negates fields and event states") {
    hardyq::Trajectory t;
    t.r = {1.0, 2.0};
    t.q = {0.5, -0.25};
    t.qr = {-1.0, 0.75};
    t.vq = {2.0, 3.0};
    t.vqr = {-2.0, -3.0};
    t.events.push_back({hardyq::EventKind::QZero, 2.0, {2.0, -0.25, 0.75}});
    auto m = hardyq::mirrored(t);
    CHECK(m.q[0] == -0.5);
    CHECK(m.qr[1] == -0.75);
    CHECK(m.vq[1] == -3.0);
    CHECK(m.events[0].state.q == 0.25);
    CHECK(m.r == t.r);
}
