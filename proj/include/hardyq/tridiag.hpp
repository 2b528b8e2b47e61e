#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace hardyq {

// Thin wrappers over the LAPACK routines used for the tridiagonal and banded
// linear algebra. All matrices are small-bandwidth and sized by the radial grid.

struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off; // size n-1
    std::size_t size() const { return diag.size(); }
};

// Number of eigenvalues strictly below lambda (Sturm count via shifted LDL^T).
int count_below(const SymTridiag& T, double lambda);

struct EigPairs {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors; // one per value, normalized in l2
};

// Lowest k eigenpairs of T (dstebz index range + dstein inverse iteration).
EigPairs lowest_eigenpairs(const SymTridiag& T, int k);

// Solve T x = b for general real tridiagonal T (dgtsv on copies).
std::vector<double> solve_tridiag(const std::vector<double>& dl,
                                  const std::vector<double>& dg,
                                  const std::vector<double>& du,
                                  const std::vector<double>& b);

// Factored general banded matrix (dgbtrf/dgbtrs), kl sub- and ku superdiagonals.
class BandedLU {
  public:
    // a(i, j) callback gives the matrix entry; only |i-j| <= max(kl,ku) is read.
    template <class F>
    static BandedLU factor(std::size_t n, int kl, int ku, F&& a) {
        BandedLU lu;
        lu.init(n, kl, ku);
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t lo = j >= std::size_t(ku) ? j - ku : 0;
            std::size_t hi = std::min(n - 1, j + kl);
            for (std::size_t i = lo; i <= hi; ++i)
                lu.entry(i, j) = a(i, j);
        }
        lu.run_factor();
        return lu;
    }

    void solve_inplace(std::vector<double>& b) const;
    std::size_t size() const { return n_; }

  private:
    void init(std::size_t n, int kl, int ku);
    double& entry(std::size_t i, std::size_t j);
    void run_factor();

    std::size_t n_ = 0;
    int kl_ = 0, ku_ = 0, ldab_ = 0;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

// Factored complex tridiagonal matrix (zgttrf/zgttrs), reused across solves.
class ComplexTridiagLU {
  public:
    using cplx = std::complex<double>;
    static ComplexTridiagLU factor(std::vector<cplx> dl, std::vector<cplx> dg,
                                   std::vector<cplx> du);
    void solve_inplace(std::vector<cplx>& b) const;

  private:
    std::vector<cplx> dl_, dg_, du_, du2_;
    std::vector<int> ipiv_;
};

} // namespace hardyq
