#pragma once

#include <complex>
#include <cstddef>

namespace hardyq::kernels {

using cplx = std::complex<double>;

// Hot loops used by the quadrature, operator applies and the time stepper.
// Scalar reference implementations always exist; an AVX2+FMA variant is
// selected at runtime when the CPU supports it. Both variants are exposed
// so tests can check them against each other on the same inputs.
struct Table {
    double (*dot)(std::size_t n, const double* x, const double* y);
    double (*dot3)(std::size_t n, const double* w, const double* x, const double* y);
    void (*axpy)(std::size_t n, double alpha, const double* x, double* y);
    void (*abs2)(std::size_t n, const cplx* z, double* out);
    // y = T x for tridiagonal T in LAPACK layout: dl (n-1), dg (n), du (n-1).
    void (*tridiag_apply)(std::size_t n, const double* dl, const double* dg,
                          const double* du, const double* x, double* y);
    // Same T (real coefficients) applied to a complex vector.
    void (*tridiag_apply_c)(std::size_t n, const double* dl, const double* dg,
                            const double* du, const cplx* x, cplx* y);
    // out = |z|^p z elementwise, p > 0.
    void (*nonlin_pow)(std::size_t n, const cplx* z, double p, cplx* out);
};

const Table& scalar_table();
const Table* avx2_table(); // nullptr when the CPU lacks AVX2/FMA
// Dispatched table: AVX2 when available unless HARDYQ_FORCE_SCALAR is set.
const Table& active();
const char* backend_name();

inline double dot(std::size_t n, const double* x, const double* y) {
    return active().dot(n, x, y);
}
inline double dot3(std::size_t n, const double* w, const double* x, const double* y) {
    return active().dot3(n, w, x, y);
}
inline void axpy(std::size_t n, double alpha, const double* x, double* y) {
    active().axpy(n, alpha, x, y);
}
inline void abs2(std::size_t n, const cplx* z, double* out) {
    active().abs2(n, z, out);
}
inline void tridiag_apply(std::size_t n, const double* dl, const double* dg,
                          const double* du, const double* x, double* y) {
    active().tridiag_apply(n, dl, dg, du, x, y);
}
inline void tridiag_apply(std::size_t n, const double* dl, const double* dg,
                          const double* du, const cplx* x, cplx* y) {
    active().tridiag_apply_c(n, dl, dg, du, x, y);
}
inline void nonlin_pow(std::size_t n, const cplx* z, double p, cplx* out) {
    active().nonlin_pow(n, z, p, out);
}

} // namespace hardyq::kernels
