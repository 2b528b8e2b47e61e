#pragma once

#include "hardyq/grid.hpp"
#include "hardyq/params.hpp"
#include "hardyq/tridiag.hpp"

#include <vector>

namespace hardyq {

// Discrete radial Schrodinger-type operator on the log grid, stored as a
// symmetric weighted matrix A_w (the operator is W^{-1} A_w with W = diag(wq)).
//
// Sector operators (assemble_sector) represent
//   -(d^2/dr^2 + (d-1)/r d/dr) + (a+mu)/r^2 + 1 - coeff Q^p
// in the gauged variable v = r^{-gauge} q, where gauge solves
// g (g + d - 2) = a + mu. The substitution turns the singular part into the
// radial Laplacian of effective dimension d + 2 gauge acting on v, so the
// assembled rows carry no 1/r^2 potential and regular functions look flat at
// the inner edge. The transform is unitary from the r^{d-1} dr metric to the
// r^{d-1+2 gauge} dr metric (weights wq), so eigenvalues, inertia, and all
// quadratic forms match the original operator exactly. apply/form work on
// gauged vectors; rg = r^gauge converts back (q = rg * v).
//
// The inner boundary is the natural zero-flux closure (exact for the regular
// power behavior); the outer row closes with the decaying tail slope.
struct SectorOperator {
    int d = 0;
    double a = 0.0, mu = 0.0, coeff = 0.0;
    double gauge = 0.0;
    RadialGrid g;
    std::vector<double> wq; // gauged quadrature weights
    std::vector<double> rg; // r^gauge per node
    std::vector<double> dl, dg, du; // rows of A_w
    std::vector<double> dd;         // non-flux diagonal: wq V plus closures
    std::vector<double> V;          // potential samples (gauged frame)

    std::size_t size() const { return dg.size(); }
    void apply(const double* x, double* y) const;   // y = W^{-1} A_w x
    // y = A_w x, evaluated in flux form (face differences first, then dd x).
    // The plain three-products-per-row evaluation would need the near-origin
    // stiffness entries, which dwarf wq by many orders, to cancel through
    // O(|x|)-sized products; for smooth x the flux differences are tiny from
    // the start, so this form loses nothing to roundoff.
    void apply_w(const double* x, double* y) const;
    double form(const std::vector<double>& x, const std::vector<double>& y) const;
    SymTridiag symmetrized() const; // W^{-1/2} A_w W^{-1/2}
    // Row-form entry (W^{-1} A_w)[i][j]; zero outside the band.
    double row_entry(std::size_t i, std::size_t j) const;
};

// ell = 0 or 1 (mu = 0, d-1). Higher sectors are positive by monotonicity in
// mu and are not assembled.
SectorOperator assemble_sector(const Params& P, const RadialGrid& g, int ell, double coeff,
                               const std::vector<double>& Qp);

// Ungauged assembly of the linear part -(d^2/dr^2 + (d-1)/r d/dr) + a/r^2
// (no unit shift, no nonlinear coefficient), acting on plain grid samples
// with weights wq = g.w. Used by the time stepper, where the state keeps its
// physical singular profile.
SectorOperator assemble_radial(const Params& P, const RadialGrid& g);

// Lowest k eigenpairs: values ascending, vectors returned in the original
// (ungauged) variable with sum g.w v^2 = 1.
EigPairs lowest_modes(const SectorOperator& op, int k);

// Eigenvalues strictly below `threshold`.
int modes_below(const SectorOperator& op, double threshold);

// min <op v, v> / <v, v> subject to <v, gvec>_wq = 0, with gvec in the
// operator's gauged frame; computed as the interlaced root of the constraint
// resolvent between the two lowest unconstrained eigenvalues.
double constrained_min(const SectorOperator& op, const std::vector<double>& gvec);

// The real dichotomy pair of the linearized flow: v1 solves
// -L2 L1 v1 = e0^2 v1 and v2 = -L1 v1 / e0, so that V(+-) = (v1, +-v2)
// satisfy JL V = +-e0 V. Two independent routes compute e0. Primary: shifted
// inverse iteration on the interleaved first-order system, where +e0 is the
// strictly nearest eigenvalue to any real shift above e0/2 (the rest of the
// spectrum is the imaginary pairs and the near-kernel), polished by
// mixed-precision refinement so the pair residual is measured below the
// double roundoff floor of the stiff inner rows. Cross-check (e0_alt): the
// composed operator L2 L1 has exactly one negative eigenvalue -e0^2
// (Sylvester through the L2 square root), and its position is located by
// inertia counts of the symmetric banded pencil [[S1, cI], [cI, -S2]]
// bisected over c, with no solves involved. Inputs and outputs are in the
// original variable; the internals run in the gauged frame.
struct Dichotomy {
    double e0 = 0.0;
    double e0_alt = 0.0;
    std::vector<double> v1, v2; // ||v1||_w^2 + ||v2||_w^2 = 1
    double eta = 0.0;           // <L1 v1, v1> - <L2 v2, v2>
    double cplus = 0.0, cminus = 0.0; // scales making <L V+, V-> = 1
    double iter_drift = 0.0;    // interleaved-iterate residual at acceptance
    double res_plus = 0.0, res_minus = 0.0; // ||JL V(+-) -+ e0 V(+-)|| / ||V(+-)||
    double diag_plus = 0.0, diag_minus = 0.0; // <L V(+-), V(+-)>, zero in exact arithmetic
    double cross = 0.0;         // <L V+, V-> after normalization
    int iterations = 0;
};

Dichotomy dichotomy_mode(const SectorOperator& L1, const SectorOperator& L2,
                         const std::vector<double>& Q, const std::vector<double>& Q1);

// Everything the spectrum command reports, computed from a profile's samples.
struct SpectrumReport {
    double l2Q_rel = 0.0;  // ||L2 Q|| / ||Q||
    double l1Q1_rel = 0.0; // ||L1 Q1 + 2Q|| / ||Q||
    double l1QQ = 0.0;     // <L1 Q, Q>, equals -p ||Q||_{p+2}^{p+2}
    double l1QQ_expected = 0.0;
    double eq_lhs = 0.0, eq_rhs = 0.0, eq_rel = 0.0; // <L1 Q1, Q1> vs (d-4/p) mass
    int neg_l1_ell0 = 0, neg_l2_ell0 = 0, neg_l1_ell1 = 0, neg_l2_ell1 = 0;
    std::vector<double> eig_l1_ell0, eig_l2_ell0, eig_l1_ell1, eig_l2_ell1;
    double l2_ground_cosine = 0.0; // weighted cosine of the L2 ground mode with Q
    double coercive_l1 = 0.0, coercive_l2 = 0.0;
    std::vector<double> l1_mode0, l2_mode0; // lowest eigenvectors, ell = 0
    Dichotomy dich;
};

struct ProfileArrays {
    const Params& P;
    const RadialGrid& g;
    const std::vector<double>& Q;
    const std::vector<double>& Q1;
};

SpectrumReport build_spectrum_report(const ProfileArrays& pa, double mass);

} // namespace hardyq
