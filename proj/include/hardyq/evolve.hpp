#pragma once

#include "hardyq/grid.hpp"
#include "hardyq/params.hpp"
#include "hardyq/profile.hpp"
#include "hardyq/spectral.hpp"

#include <complex>
#include <vector>

namespace hardyq {

using cplx = std::complex<double>;

// Discrete stationary state and the machinery shared by all evolution runs:
// the linear-part operator, the Newton-polished profile on the grid (so the
// stepper's fixed point is the discrete equation's own solution, not the
// sampled continuum one), and the dichotomy pair of the polished state.
struct EvolveSetup {
    Params P;
    RadialGrid g;
    std::vector<double> Q;  // polished: A Q + Q - Q^{p+1} = 0 in the discrete sense
    std::vector<double> Qp; // Q^p
    SectorOperator A;       // linear part a/r^2 (no unit shift)
    Dichotomy dich;         // of the polished state
    double massQ = 0.0, kinQ = 0.0; // discrete forms of the polished state
    double cQ = 0.0;                // sum w Q^{p+2}, the modulation pairing scale
    double polish_residual = 0.0;
    int polish_iterations = 0;
};

EvolveSetup make_evolve_setup(const Params& P, const GroundStateProfile& gs);

// Newton refinement of grid samples to the discrete stationary equation.
std::vector<double> polish_stationary(const Params& P, const SectorOperator& A,
                                      std::vector<double> q, double tol, int max_iter,
                                      double* residual_out, int* iters_out);

// Hardy-form quadratic energy <A_w f, f> of a complex field (real result).
double kinetic_of(const EvolveSetup& S, const std::vector<cplx>& f);

struct Modulation {
    double theta = 0.0;
    double alpha = 0.0;
    double dist = 0.0; // | ||f||_a^2 - ||Q||_a^2 |
    std::vector<cplx> ut; // e^{-i theta} f - (1+alpha) Q
};

Modulation modulate(const EvolveSetup& S, const std::vector<cplx>& f);

// i (|Q+v|^p (Q+v) - Q^{p+1} - (p+1) Q^p Re v - i Q^p Im v): the quadratic-and-up
// part of the nonlinearity around Q, entering the ut equation as a source.
std::vector<cplx> nonlinear_remainder(const EvolveSetup& S, const std::vector<cplx>& v);

// Localizing weight for the truncated virial quantities: phi(r) = r^2 up to R,
// transitions with phi'' <= 2 exactly, constant (16/7) R^2 beyond 2R.
struct VirialWeight {
    double R = 20.0;
    double phi(double r) const;
    double dphi(double r) const;
    double d2phi(double r) const;
    double lap(double r, int d) const;   // Laplacian of phi(|x|)
    double bilap(double r, int d) const; // Laplacian of lap
};

struct VirialSample {
    double VR = 0.0;   // sum w phi |u|^2
    double Vdot = 0.0; // 2 Im sum w conj(u) u_r phi'
    double AR = 0.0;   // localized error functional outside R
};

VirialSample virial_sample(const EvolveSetup& S, const VirialWeight& W,
                           const std::vector<cplx>& u);

enum class RunKind { Standing, StableMinus, StablePlus, UnstableMinus, UnstablePlus };
const char* run_kind_name(RunKind k);

struct EvolveOpts {
    double dt = 1e-3;
    double t_end = 5.0;
    int record_every = 20;
    double delta = 1e-3;   // perturbation size along the dichotomy pair
    double virial_R = 20.0;
    double fp_tol = 1e-12; // fixed-point tolerance of the implicit midpoint solve
    int fp_max = 8;
};

struct TimeSeries {
    std::vector<double> t, theta, alpha, dist, kin, mass, energy, VR, Vdot, AR;
};

struct EvolveResult {
    RunKind kind = RunKind::Standing;
    double delta = 0.0;
    TimeSeries series;
    double mass_drift = 0.0; // max |mass - mass(0)| / mass(0)
    double dist_max = 0.0;
    double dist_final = 0.0;
    int fp_iter_max = 0;
    // Set when the midpoint fixed point stops contracting, which on the
    // mass-supercritical side signals focusing growth the step cannot
    // resolve; the series holds everything recorded up to that time.
    bool truncated = false;
    double t_truncated = 0.0;
};

// Crank-Nicolson time stepping in the frame co-rotating with the standing
// wave (the step solves i v_t = (A+1) v - |v|^p v; the lab field is e^{it} v,
// and the recorded series is that of the lab field). Standing runs step in
// extended precision so that rounding does not seed the e0-unstable mode
// within the horizon; perturbed runs carry deliberate seeds and use double.
EvolveResult run_evolution(const EvolveSetup& S, RunKind kind, const EvolveOpts& opts);

// Least-squares slope of log(y) over samples with lo <= y <= hi (monotone
// window); returns the fitted d/dt log y and the window size through `count`.
double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y, double lo,
                     double hi, int* count = nullptr);

} // namespace hardyq
