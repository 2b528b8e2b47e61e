#include "hardyq/errors.hpp"
#include "hardyq/params.hpp"

#include <doctest.h>

#include <cmath>

using hardyq::Params;

TEST_CASE("derived exponents at the reference point") {
    Params P(3, 2.0, -0.1);
    CHECK(P.beta() == doctest::Approx(std::sqrt(0.6)).epsilon(1e-15));
    CHECK(P.gamma0() == doctest::Approx((1.0 - std::sqrt(0.6)) / 2.0).epsilon(1e-15));
    CHECK(P.sigma() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(P.dynamics_admissible());
}

TEST_CASE("gamma0 solves its indicial equation") {
    for (int d : {3, 4, 5, 6}) {
        const double amin = -0.25 * (d - 2.0) * (d - 2.0);
        for (double frac : {0.1, 0.5, 0.9}) {
            const double a = amin * frac;
            const double pmax = 4.0 / (d - 2.0);
            Params P(d, 0.5 * pmax, a);
            const double g = P.gamma0();
            CHECK(g * g - (d - 2.0) * g - a == doctest::Approx(0.0).epsilon(1e-13));
            CHECK(g >= 0.0);
            CHECK(g < (d - 2.0) / 2.0);
        }
    }
}

TEST_CASE("constructor rejects out-of-range inputs") {
    CHECK_THROWS_AS(Params(2, 2.0, -0.1), hardyq::validation_error);
    CHECK_THROWS_AS(Params(3, 2.0, 0.1), hardyq::validation_error);   // a must be negative
    CHECK_THROWS_AS(Params(3, 2.0, -0.3), hardyq::validation_error);  // below Hardy threshold
    CHECK_THROWS_AS(Params(3, 4.0, -0.1), hardyq::validation_error);  // p at the critical power
    CHECK_THROWS_AS(Params(3, 0.0, -0.1), hardyq::validation_error);
    CHECK_THROWS_AS(Params(3, -1.0, -0.1), hardyq::validation_error);
    CHECK_NOTHROW(Params(3, 3.9, -0.24));
}

TEST_CASE("admissibility window for the dynamics") {
    CHECK(Params(3, 2.0, -0.1).dynamics_admissible());
    CHECK(Params(4, 1.2, -0.5).dynamics_admissible());
    CHECK(Params(5, 1.0, -1.0).dynamics_admissible());
    // p below the mass-critical power 4/d fails the admissibility test
    CHECK_FALSE(Params(3, 1.2, -0.1).dynamics_admissible());
    // a too close to the Hardy threshold fails it as well
    const double d = 3.0, p = 2.0;
    const double a_edge = 0.25 * (d - 2.0) * (d - 2.0) * (-1.0 + p * p / ((p + 1.0) * (p + 1.0)));
    CHECK_FALSE(Params(3, 2.0, a_edge - 1e-6).dynamics_admissible());
    CHECK(Params(3, 2.0, a_edge + 1e-6).dynamics_admissible());
}
