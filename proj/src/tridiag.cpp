#include "hardyq/tridiag.hpp"

#include "hardyq/errors.hpp"

#include <cmath>
#include <cstring>
#include <lapacke.h>
#include <limits>

namespace hardyq {

int count_below(const SymTridiag& T, double lambda) {
    // Sturm sequence: signs of the LDL^T pivots of T - lambda I.
    const std::size_t n = T.size();
    int count = 0;
    double d = 1.0;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (std::size_t i = 0; i < n; ++i) {
        double off2 = i == 0 ? 0.0 : T.off[i - 1] * T.off[i - 1];
        d = T.diag[i] - lambda - off2 / d;
        if (std::abs(d) < tiny) d = -tiny; // treat exact hit as below
        if (d < 0.0) ++count;
    }
    return count;
}

EigPairs lowest_eigenpairs(const SymTridiag& T, int k) {
    const lapack_int n = lapack_int(T.size());
    if (k < 1 || k > n) throw validation_error("eigenpair count out of range");
    std::vector<double> d = T.diag, e = T.off;
    lapack_int m = 0, nsplit = 0;
    std::vector<double> wvals(n);
    std::vector<lapack_int> iblock(n), isplit(n);
    // abstol <= 0 would fall back to ulp*|T|; our matrices are strongly graded
    // (inner rows ~1e17), which would smear all O(1) eigenvalues into one
    // cluster. Request full bisection accuracy instead.
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    lapack_int info = LAPACKE_dstebz('I', 'B', n, 0.0, 0.0, 1, k, abstol,
                                     d.data(), e.data(), &m, &nsplit,
                                     wvals.data(), iblock.data(), isplit.data());
    if (info != 0 || m < k)
        throw convergence_error("tridiagonal eigenvalue bisection failed");
    std::vector<double> z(std::size_t(n) * k);
    std::vector<lapack_int> ifail(k);
    info = LAPACKE_dstein(LAPACK_COL_MAJOR, n, d.data(), e.data(), k,
                          wvals.data(), iblock.data(), isplit.data(),
                          z.data(), n, ifail.data());
    if (info != 0)
        throw convergence_error("tridiagonal inverse iteration failed");
    EigPairs out;
    out.values.assign(wvals.begin(), wvals.begin() + k);
    out.vectors.resize(k);
    for (int j = 0; j < k; ++j)
        out.vectors[j].assign(z.begin() + std::size_t(j) * n,
                              z.begin() + std::size_t(j + 1) * n);
    return out;
}

std::vector<double> solve_tridiag(const std::vector<double>& dl,
                                  const std::vector<double>& dg,
                                  const std::vector<double>& du,
                                  const std::vector<double>& b) {
    const lapack_int n = lapack_int(dg.size());
    std::vector<double> l = dl, g = dg, u = du, x = b;
    lapack_int info = LAPACKE_dgtsv(LAPACK_COL_MAJOR, n, 1, l.data(), g.data(),
                                    u.data(), x.data(), n);
    if (info != 0) throw convergence_error("tridiagonal solve failed");
    return x;
}

void BandedLU::init(std::size_t n, int kl, int ku) {
    n_ = n;
    kl_ = kl;
    ku_ = ku;
    ldab_ = 2 * kl + ku + 1;
    ab_.assign(std::size_t(ldab_) * n, 0.0);
    ipiv_.assign(n, 0);
}

double& BandedLU::entry(std::size_t i, std::size_t j) {
    // LAPACK band storage: ab[kl + ku + i - j, j]
    return ab_[std::size_t(kl_ + ku_) + i - j + j * std::size_t(ldab_)];
}

void BandedLU::run_factor() {
    std::vector<lapack_int> piv(n_);
    lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, lapack_int(n_), lapack_int(n_),
                                     kl_, ku_, ab_.data(), ldab_, piv.data());
    if (info != 0) throw convergence_error("banded LU factorization failed");
    ipiv_.assign(piv.begin(), piv.end());
}

void BandedLU::solve_inplace(std::vector<double>& b) const {
    if (b.size() != n_) throw validation_error("banded solve size mismatch");
    std::vector<lapack_int> piv(ipiv_.begin(), ipiv_.end());
    lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', lapack_int(n_), kl_, ku_, 1,
                                     ab_.data(), ldab_, piv.data(), b.data(),
                                     lapack_int(n_));
    if (info != 0) throw convergence_error("banded LU solve failed");
}

ComplexTridiagLU ComplexTridiagLU::factor(std::vector<cplx> dl, std::vector<cplx> dg,
                                          std::vector<cplx> du) {
    ComplexTridiagLU f;
    const lapack_int n = lapack_int(dg.size());
    f.dl_ = std::move(dl);
    f.dg_ = std::move(dg);
    f.du_ = std::move(du);
    f.du2_.assign(n >= 2 ? n - 2 : 0, cplx(0.0));
    std::vector<lapack_int> piv(n);
    lapack_int info = LAPACKE_zgttrf(
        n, reinterpret_cast<lapack_complex_double*>(f.dl_.data()),
        reinterpret_cast<lapack_complex_double*>(f.dg_.data()),
        reinterpret_cast<lapack_complex_double*>(f.du_.data()),
        reinterpret_cast<lapack_complex_double*>(f.du2_.data()), piv.data());
    if (info != 0) throw convergence_error("complex tridiagonal factorization failed");
    f.ipiv_.assign(piv.begin(), piv.end());
    return f;
}

void ComplexTridiagLU::solve_inplace(std::vector<cplx>& b) const {
    const lapack_int n = lapack_int(dg_.size());
    if (b.size() != dg_.size()) throw validation_error("tridiagonal solve size mismatch");
    std::vector<lapack_int> piv(ipiv_.begin(), ipiv_.end());
    lapack_int info = LAPACKE_zgttrs(
        LAPACK_COL_MAJOR, 'N', n, 1,
        reinterpret_cast<const lapack_complex_double*>(dl_.data()),
        reinterpret_cast<const lapack_complex_double*>(dg_.data()),
        reinterpret_cast<const lapack_complex_double*>(du_.data()),
        reinterpret_cast<const lapack_complex_double*>(du2_.data()), piv.data(),
        reinterpret_cast<lapack_complex_double*>(b.data()), n);
    if (info != 0) throw convergence_error("complex tridiagonal solve failed");
}

} // namespace hardyq
