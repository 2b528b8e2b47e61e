#include "hardyq/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <cmath>
#include <immintrin.h>

namespace hardyq::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double v_dot(std::size_t n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double v_dot3(std::size_t n, const double* w, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d wx = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i));
        acc = _mm256_fmadd_pd(wx, _mm256_loadu_pd(y + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * x[i] * y[i];
    return s;
}

void v_axpy(std::size_t n, double alpha, const double* x, double* y) {
    __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d t = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, t);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void v_abs2(std::size_t n, const cplx* z, double* out) {
    const double* zd = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(zd + 2 * i);     // r0 i0 r1 i1
        __m256d b = _mm256_loadu_pd(zd + 2 * i + 4); // r2 i2 r3 i3
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
        // h = s0 s2 s1 s3; restore order
        _mm256_storeu_pd(out + i, _mm256_permute4x64_pd(h, 0xD8));
    }
    for (; i < n; ++i) out[i] = std::norm(z[i]);
}

void v_tridiag_apply(std::size_t n, const double* dl, const double* dg,
                     const double* du, const double* x, double* y) {
    if (n == 1) {
        y[0] = dg[0] * x[0];
        return;
    }
    y[0] = dg[0] * x[0] + du[0] * x[1];
    std::size_t i = 1;
    for (; i + 4 < n; i += 4) {
        __m256d t = _mm256_mul_pd(_mm256_loadu_pd(dl + i - 1), _mm256_loadu_pd(x + i - 1));
        t = _mm256_fmadd_pd(_mm256_loadu_pd(dg + i), _mm256_loadu_pd(x + i), t);
        t = _mm256_fmadd_pd(_mm256_loadu_pd(du + i), _mm256_loadu_pd(x + i + 1), t);
        _mm256_storeu_pd(y + i, t);
    }
    for (; i + 1 < n; ++i)
        y[i] = dl[i - 1] * x[i - 1] + dg[i] * x[i] + du[i] * x[i + 1];
    y[n - 1] = dl[n - 2] * x[n - 2] + dg[n - 1] * x[n - 1];
}

// Duplicate two packed coefficients into complex lanes: (c0, c1) -> (c0, c0, c1, c1).
inline __m256d dup2(const double* c) {
    __m256d t = _mm256_castpd128_pd256(_mm_loadu_pd(c));
    return _mm256_permute4x64_pd(t, 0x50);
}

void v_tridiag_apply_c(std::size_t n, const double* dl, const double* dg,
                       const double* du, const cplx* x, cplx* y) {
    if (n == 1) {
        y[0] = dg[0] * x[0];
        return;
    }
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    y[0] = dg[0] * x[0] + du[0] * x[1];
    std::size_t i = 1;
    for (; i + 2 < n; i += 2) {
        __m256d t = _mm256_mul_pd(dup2(dl + i - 1), _mm256_loadu_pd(xd + 2 * (i - 1)));
        t = _mm256_fmadd_pd(dup2(dg + i), _mm256_loadu_pd(xd + 2 * i), t);
        t = _mm256_fmadd_pd(dup2(du + i), _mm256_loadu_pd(xd + 2 * (i + 1)), t);
        _mm256_storeu_pd(yd + 2 * i, t);
    }
    for (; i + 1 < n; ++i)
        y[i] = dl[i - 1] * x[i - 1] + dg[i] * x[i] + du[i] * x[i + 1];
    y[n - 1] = dl[n - 2] * x[n - 2] + dg[n - 1] * x[n - 1];
}

void v_nonlin_pow(std::size_t n, const cplx* z, double p, cplx* out) {
    const double* zd = reinterpret_cast<const double*>(z);
    double* od = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    if (p == 2.0) {
        for (; i + 2 <= n; i += 2) {
            __m256d v = _mm256_loadu_pd(zd + 2 * i);
            __m256d sq = _mm256_mul_pd(v, v);
            __m256d m = _mm256_hadd_pd(sq, sq); // |z0|^2 |z0|^2 |z1|^2 |z1|^2
            _mm256_storeu_pd(od + 2 * i, _mm256_mul_pd(v, m));
        }
    } else if (p == 1.0) {
        for (; i + 2 <= n; i += 2) {
            __m256d v = _mm256_loadu_pd(zd + 2 * i);
            __m256d sq = _mm256_mul_pd(v, v);
            __m256d m = _mm256_sqrt_pd(_mm256_hadd_pd(sq, sq));
            _mm256_storeu_pd(od + 2 * i, _mm256_mul_pd(v, m));
        }
    }
    for (; i < n; ++i) {
        double m2 = std::norm(z[i]);
        out[i] = (m2 == 0.0) ? cplx(0.0, 0.0) : z[i] * std::pow(m2, 0.5 * p);
    }
}

} // namespace

namespace detail {
extern const Table k_avx2 = {
    v_dot, v_dot3, v_axpy, v_abs2, v_tridiag_apply, v_tridiag_apply_c, v_nonlin_pow,
};
}

} // namespace hardyq::kernels

#else
#error "kernels_avx2.cpp must be compiled with -mavx2 -mfma"
#endif
