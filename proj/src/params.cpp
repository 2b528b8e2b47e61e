#include "hardyq/params.hpp"

#include "hardyq/errors.hpp"

#include <sstream>

namespace hardyq {

Params::Params(int d_, double p_, double a_) : d(d_), p(p_), a(a_) {
    std::ostringstream why;
    if (d < 3) {
        why << "d = " << d << " below 3";
    } else if (!(p > 0.0) || !(p < 4.0 / double(d - 2))) {
        why << "p = " << p << " outside (0, " << 4.0 / double(d - 2) << ")";
    } else {
        const double hardy = -0.25 * double(d - 2) * double(d - 2);
        if (!(a > hardy) || !(a < 0.0)) why << "a = " << a << " outside (" << hardy << ", 0)";
    }
    if (!why.str().empty()) throw validation_error("invalid parameters: " + why.str());
}

bool Params::dynamics_admissible() const {
    const double dd = double(d);
    const double thresh = 0.25 * (dd - 2.0) * (dd - 2.0) * (-1.0 + p * p / ((p + 1.0) * (p + 1.0)));
    return p >= 1.0 && p > 4.0 / dd && p < 4.0 / (dd - 2.0) && a > thresh;
}

} // namespace hardyq
