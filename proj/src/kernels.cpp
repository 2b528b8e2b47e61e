#include "hardyq/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace hardyq::kernels {

namespace {

double s_dot(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double s_dot3(std::size_t n, const double* w, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

void s_axpy(std::size_t n, double alpha, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void s_abs2(std::size_t n, const cplx* z, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::norm(z[i]);
}

void s_tridiag_apply(std::size_t n, const double* dl, const double* dg,
                     const double* du, const double* x, double* y) {
    if (n == 1) {
        y[0] = dg[0] * x[0];
        return;
    }
    y[0] = dg[0] * x[0] + du[0] * x[1];
    for (std::size_t i = 1; i + 1 < n; ++i)
        y[i] = dl[i - 1] * x[i - 1] + dg[i] * x[i] + du[i] * x[i + 1];
    y[n - 1] = dl[n - 2] * x[n - 2] + dg[n - 1] * x[n - 1];
}

void s_tridiag_apply_c(std::size_t n, const double* dl, const double* dg,
                       const double* du, const cplx* x, cplx* y) {
    if (n == 1) {
        y[0] = dg[0] * x[0];
        return;
    }
    y[0] = dg[0] * x[0] + du[0] * x[1];
    for (std::size_t i = 1; i + 1 < n; ++i)
        y[i] = dl[i - 1] * x[i - 1] + dg[i] * x[i] + du[i] * x[i + 1];
    y[n - 1] = dl[n - 2] * x[n - 2] + dg[n - 1] * x[n - 1];
}

void s_nonlin_pow(std::size_t n, const cplx* z, double p, cplx* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double m2 = std::norm(z[i]);
        out[i] = (m2 == 0.0) ? cplx(0.0, 0.0) : z[i] * std::pow(m2, 0.5 * p);
    }
}

const Table k_scalar = {
    s_dot, s_dot3, s_axpy, s_abs2, s_tridiag_apply, s_tridiag_apply_c, s_nonlin_pow,
};

bool force_scalar() {
    const char* e = std::getenv("HARDYQ_FORCE_SCALAR");
    return e != nullptr && e[0] != '\0' && e[0] != '0';
}

} // namespace

namespace detail {
// Defined in kernels_avx2.cpp (compiled with -mavx2 -mfma).
extern const Table k_avx2;
}

const Table& scalar_table() { return k_scalar; }

const Table* avx2_table() {
#if defined(__x86_64__) || defined(__i386__)
    static const bool ok =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok ? &detail::k_avx2 : nullptr;
#else
    return nullptr;
#endif
}

const Table& active() {
    static const Table* t = [] {
        if (force_scalar()) return &k_scalar;
        const Table* a = avx2_table();
        return a ? a : &k_scalar;
    }();
    return *t;
}

const char* backend_name() {
    return &active() == &k_scalar ? "scalar" : "avx2";
}

} // namespace hardyq::kernels
