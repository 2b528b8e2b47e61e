#include "hardyq/errors.hpp"
#include "hardyq/evolve.hpp"
#include "hardyq/io.hpp"
#include "hardyq/kernels.hpp"
#include "hardyq/profile.hpp"
#include "hardyq/spectral.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace {

using hardyq::io::fmt17;
using hardyq::io::json;

struct ProblemFlags {
    int d = 3;
    double p = 2.0;
    double a = -0.1;
    std::string out;
    std::string config;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f) {
    cmd->add_option("--d", f.d, "space dimension (>= 3)");
    cmd->add_option("--p", f.p, "nonlinearity power");
    cmd->add_option("--a", f.a, "inverse-square coefficient");
    cmd->add_option("--out", f.out, "output directory (default: $HARDYQ_OUTPUT_ROOT or cwd)");
    cmd->add_option("--config", f.config, "JSON file whose values override the flags");
}

// The config file wins over command-line flags.
template <class T>
void cfg(const json& j, const char* key, T& slot) {
    if (j.contains(key)) slot = j[key].get<T>();
}

json load_config(const ProblemFlags& f) {
    if (f.config.empty()) return json::object();
    return hardyq::io::load_json(f.config);
}

void apply_problem(const json& j, ProblemFlags& f) {
    cfg(j, "d", f.d);
    cfg(j, "p", f.p);
    cfg(j, "a", f.a);
    cfg(j, "out", f.out);
}

hardyq::GroundStateProfile load_or_compute(const std::string& profile_dir,
                                           const ProblemFlags& f) {
    if (!profile_dir.empty()) return hardyq::io::read_profile(profile_dir);
    return hardyq::compute_ground_state(hardyq::Params(f.d, f.p, f.a), {});
}

int cmd_ground_state(ProblemFlags& f, hardyq::ProfileOpts& opts) {
    json c = load_config(f);
    apply_problem(c, f);
    cfg(c, "r_min", opts.grid.r_min);
    cfg(c, "per_octave", opts.grid.per_octave);
    cfg(c, "n", opts.grid.n);
    cfg(c, "b_lo", opts.b_lo);
    cfg(c, "b_hi", opts.b_hi);
    cfg(c, "bisect_tol", opts.bisect_tol);
    cfg(c, "r_match", opts.match.r_match);

    hardyq::Params P(f.d, f.p, f.a);
    auto dir = hardyq::io::resolve_outdir(f.out);
    hardyq::GroundStateProfile gs = hardyq::compute_ground_state(P, opts);

    json echo;
    echo["command"] = "ground-state";
    echo["d"] = f.d;
    echo["p"] = f.p;
    echo["a"] = f.a;
    echo["r_min"] = opts.grid.r_min;
    echo["per_octave"] = opts.grid.per_octave;
    echo["n"] = opts.grid.n;
    echo["b_lo"] = opts.b_lo;
    echo["b_hi"] = opts.b_hi;
    echo["bisect_tol"] = opts.bisect_tol;
    echo["r_match"] = opts.match.r_match;
    hardyq::io::write_json(dir / "resolved_config.json", echo);
    hardyq::io::write_profile(dir, gs);

    std::printf("b0 %s\n", fmt17(gs.b0).c_str());
    std::printf("c0 %s\n", fmt17(gs.c0).c_str());
    std::printf("mass %s\n", fmt17(gs.mass).c_str());
    std::printf("energy %s\n", fmt17(gs.energy).c_str());
    std::printf("gn_constant %s\n", fmt17(gs.gn_constant).c_str());
    std::printf("outputs %s\n", dir.string().c_str());
    return 0;
}

int cmd_classify_scan(ProblemFlags& f, double b_lo, double b_hi, int count, double r_max) {
    json c = load_config(f);
    apply_problem(c, f);
    cfg(c, "b_lo", b_lo);
    cfg(c, "b_hi", b_hi);
    cfg(c, "count", count);
    cfg(c, "r_max", r_max);

    hardyq::Params P(f.d, f.p, f.a);
    auto dir = hardyq::io::resolve_outdir(f.out);
    hardyq::ClassifyOpts copts;
    copts.r_max = r_max;
    hardyq::ScanResult scan = hardyq::scan_bracket(P, b_lo, b_hi, count, copts);

    std::string csv = "b,tag,r_event\n";
    int flips = 0;
    bool seen_minus = false;
    const char* prev = "";
    for (const auto& e : scan.entries) {
        const char* tag = e.error.empty() ? hardyq::tag_name(*e.tag) : "error";
        csv += fmt17(e.b);
        csv += ',';
        csv += tag;
        csv += ',';
        csv += std::isnan(e.r_event) ? "" : fmt17(e.r_event);
        csv += '\n';
        if (std::string(prev) == "Splus" && std::string(tag) == "Sminus") ++flips;
        if (std::string(tag) == "Sminus") seen_minus = true;
        prev = tag;
    }
    hardyq::io::write_file(dir / "scan.csv", csv);
    json echo{{"command", "classify-scan"}, {"d", f.d},        {"p", f.p},
              {"a", f.a},                   {"b_lo", b_lo},    {"b_hi", b_hi},
              {"count", count},             {"r_max", r_max}};
    hardyq::io::write_json(dir / "resolved_config.json", echo);
    std::printf("entries %zu\n", scan.entries.size());
    std::printf("monotone %s\n", scan.monotone ? "true" : "false");
    std::printf("flips %d\n", flips);
    std::printf("outputs %s\n", dir.string().c_str());
    (void)seen_minus;
    return 0;
}

json dichotomy_json(const hardyq::Dichotomy& D) {
    return json{{"e0", D.e0},
                {"e0_alt", D.e0_alt},
                {"iter_drift", D.iter_drift},
                {"res_plus", D.res_plus},
                {"res_minus", D.res_minus},
                {"eta", D.eta},
                {"normalization", D.cross},
                {"diag_plus", D.diag_plus},
                {"diag_minus", D.diag_minus},
                {"iterations", D.iterations}};
}

int cmd_spectrum(ProblemFlags& f, std::string& profile_dir, bool refine) {
    json c = load_config(f);
    apply_problem(c, f);
    cfg(c, "profile", profile_dir);
    cfg(c, "refine", refine);
    if (profile_dir.empty())
        throw hardyq::io_error("spectrum needs --profile pointing at ground-state outputs");

    hardyq::GroundStateProfile gs = hardyq::io::read_profile(profile_dir);
    auto dir = hardyq::io::resolve_outdir(f.out);
    hardyq::ProfileArrays pa{gs.P, gs.grid, gs.Q, gs.Q1};
    hardyq::SpectrumReport rep = hardyq::build_spectrum_report(pa, gs.mass);

    json j;
    j["params"] = hardyq::io::params_json(gs.P);
    j["neg_count"] = rep.neg_l1_ell0;
    j["eigenvalues"] = {{"l1_ell0", rep.eig_l1_ell0},
                        {"l2_ell0", rep.eig_l2_ell0},
                        {"l1_ell1", rep.eig_l1_ell1},
                        {"l2_ell1", rep.eig_l2_ell1}};
    j["neg_counts"] = {{"l1_ell0", rep.neg_l1_ell0},
                       {"l2_ell0", rep.neg_l2_ell0},
                       {"l1_ell1", rep.neg_l1_ell1},
                       {"l2_ell1", rep.neg_l2_ell1}};
    j["kernel_residuals"] = {{"l2Q_rel", rep.l2Q_rel},
                             {"l1Q1_rel", rep.l1Q1_rel},
                             {"l1QQ", rep.l1QQ},
                             {"l1QQ_expected", rep.l1QQ_expected}};
    j["quadratic_identity"] = {{"lhs", rep.eq_lhs}, {"rhs", rep.eq_rhs}, {"rel", rep.eq_rel}};
    j["l2_ground_cosine"] = rep.l2_ground_cosine;
    j["coercivity"] = {{"l1", rep.coercive_l1}, {"l2", rep.coercive_l2}};
    j["e0"] = rep.dich.e0;
    j["normalization"] = rep.dich.cross;
    j["dichotomy"] = dichotomy_json(rep.dich);
    j["grid"] = {{"N", gs.grid.spec.n},
                 {"r_min", gs.grid.r_min()},
                 {"r_max", gs.grid.r_max()}};
    if (refine) {
        // One grid refinement for the e0 stability check.
        hardyq::ProfileOpts ropts;
        ropts.grid = gs.grid.refined().spec;
        hardyq::GroundStateProfile gsr = hardyq::compute_ground_state(gs.P, ropts);
        hardyq::ProfileArrays par{gsr.P, gsr.grid, gsr.Q, gsr.Q1};
        hardyq::SpectrumReport repr = hardyq::build_spectrum_report(par, gsr.mass);
        j["refined"] = {{"e0", repr.dich.e0},
                        {"l2Q_rel", repr.l2Q_rel},
                        {"l1Q1_rel", repr.l1Q1_rel},
                        {"eq_rel", repr.eq_rel}};
    }
    hardyq::io::write_json(dir / "spectrum.json", j);

    std::string csv = "r,l1_mode0,l2_mode0,v1,v2\n";
    for (std::size_t i = 0; i < gs.grid.size(); ++i) {
        csv += fmt17(gs.grid.r[i]);
        csv += ',';
        csv += fmt17(rep.l1_mode0[i]);
        csv += ',';
        csv += fmt17(rep.l2_mode0[i]);
        csv += ',';
        csv += fmt17(rep.dich.v1[i]);
        csv += ',';
        csv += fmt17(rep.dich.v2[i]);
        csv += '\n';
    }
    hardyq::io::write_file(dir / "modes.csv", csv);

    json echo{{"command", "spectrum"}, {"profile", profile_dir}, {"refine", refine}};
    hardyq::io::write_json(dir / "resolved_config.json", echo);

    std::printf("e0 %s\n", fmt17(rep.dich.e0).c_str());
    std::printf("e0_alt %s\n", fmt17(rep.dich.e0_alt).c_str());
    std::printf("neg_count %d\n", rep.neg_l1_ell0);
    std::printf("normalization %s\n", fmt17(rep.dich.cross).c_str());
    std::printf("outputs %s\n", dir.string().c_str());
    return 0;
}

hardyq::RunKind parse_kind(const std::string& s) {
    if (s == "standing") return hardyq::RunKind::Standing;
    if (s == "stable-minus") return hardyq::RunKind::StableMinus;
    if (s == "stable-plus") return hardyq::RunKind::StablePlus;
    if (s == "unstable-minus") return hardyq::RunKind::UnstableMinus;
    if (s == "unstable-plus") return hardyq::RunKind::UnstablePlus;
    throw hardyq::validation_error("unknown run direction: " + s);
}

// Time reversal u(t) -> conj(u)(-t) swaps the decaying and growing pairs, so a
// backward run is the forecast of the conjugate-direction forward run.
hardyq::RunKind conjugate_kind(hardyq::RunKind k) {
    switch (k) {
        case hardyq::RunKind::StableMinus: return hardyq::RunKind::UnstableMinus;
        case hardyq::RunKind::StablePlus: return hardyq::RunKind::UnstablePlus;
        case hardyq::RunKind::UnstableMinus: return hardyq::RunKind::StableMinus;
        case hardyq::RunKind::UnstablePlus: return hardyq::RunKind::StablePlus;
        default: return k;
    }
}

int cmd_evolve(ProblemFlags& f, std::string& profile_dir, std::string& direction,
               hardyq::EvolveOpts& eopts, bool backward, bool is_virial_check) {
    json c = load_config(f);
    apply_problem(c, f);
    cfg(c, "profile", profile_dir);
    cfg(c, "direction", direction);
    cfg(c, "dt", eopts.dt);
    cfg(c, "T", eopts.t_end);
    cfg(c, "delta", eopts.delta);
    cfg(c, "R", eopts.virial_R);
    cfg(c, "record_every", eopts.record_every);
    cfg(c, "backward", backward);

    hardyq::GroundStateProfile gs = load_or_compute(profile_dir, f);
    if (!gs.P.dynamics_admissible())
        throw hardyq::validation_error("parameters outside the dynamics-admissible range");
    auto dir = hardyq::io::resolve_outdir(f.out);

    hardyq::EvolveSetup S = hardyq::make_evolve_setup(gs.P, gs);
    hardyq::RunKind kind = parse_kind(direction);
    hardyq::RunKind run_as = backward ? conjugate_kind(kind) : kind;
    hardyq::EvolveResult res = hardyq::run_evolution(S, run_as, eopts);
    if (backward)
        for (auto& t : res.series.t) t = -t;

    hardyq::io::write_series(dir / "series.csv", res.series);
    json echo{{"command", is_virial_check ? "virial-check" : "evolve"},
              {"d", f.d},
              {"p", f.p},
              {"a", f.a},
              {"profile", profile_dir},
              {"direction", direction},
              {"dt", eopts.dt},
              {"T", eopts.t_end},
              {"delta", eopts.delta},
              {"R", eopts.virial_R},
              {"record_every", eopts.record_every},
              {"backward", backward}};
    hardyq::io::write_json(dir / "resolved_config.json", echo);

    json summary;
    summary["e0"] = S.dich.e0;
    summary["mass_drift"] = res.mass_drift;
    summary["dist_initial"] = res.series.dist.front();
    summary["dist_final"] = res.dist_final;
    summary["dist_max"] = res.dist_max;
    summary["polish_residual"] = S.polish_residual;
    summary["fp_iter_max"] = res.fp_iter_max;
    summary["kinQ"] = S.kinQ;
    summary["truncated"] = res.truncated;
    if (res.truncated) summary["t_truncated"] = res.t_truncated;

    if (is_virial_check) {
        // Centered second difference of VR against (2pd-8) dist + AR.
        const auto& ts = res.series;
        const double dt_rec = ts.t.size() > 1 ? ts.t[1] - ts.t[0] : 0.0;
        double worst = 0.0, worst_ar = 0.0;
        int checked = 0;
        std::string vcsv = "t,d2VR,rhs,rel_err\n";
        for (std::size_t i = 1; i + 1 < ts.t.size(); ++i) {
            if (ts.dist[i] <= 1e-6) continue;
            const double d2 = (ts.VR[i + 1] - 2.0 * ts.VR[i] + ts.VR[i - 1]) / (dt_rec * dt_rec);
            const double rhs = (2.0 * gs.P.p * gs.P.d - 8.0) * ts.dist[i] + ts.AR[i];
            const double rel = std::fabs(d2 - rhs) / std::max(std::fabs(d2), std::fabs(rhs));
            worst = std::max(worst, rel);
            worst_ar = std::max(worst_ar, std::fabs(ts.AR[i]) / ts.dist[i]);
            ++checked;
            vcsv += fmt17(ts.t[i]) + "," + fmt17(d2) + "," + fmt17(rhs) + "," + fmt17(rel) + "\n";
        }
        hardyq::io::write_file(dir / "virial.csv", vcsv);
        summary["virial_checked_points"] = checked;
        summary["virial_max_rel_err"] = worst;
        summary["virial_max_AR_over_dist"] = worst_ar;
        std::printf("virial_max_rel_err %s\n", fmt17(worst).c_str());
        std::printf("virial_max_AR_over_dist %s\n", fmt17(worst_ar).c_str());
    } else if (kind != hardyq::RunKind::Standing) {
        const bool growing = (run_as == hardyq::RunKind::UnstableMinus ||
                              run_as == hardyq::RunKind::UnstablePlus);
        const double d0 = res.series.dist.front();
        const double delta0 = 1e-2 * S.kinQ;
        // The pair normalization <L V+, V-> = 1 puts the initial offset at
        // 2 delta <Q, v1>_a, a few times delta, so the growth fit runs from
        // just above that up to the modulation-validity edge delta0. The
        // decay fit stops at the dist minimum: past it the quadratic miss of
        // the stable manifold, O(delta^2) on the growing mode, takes over and
        // the same dist values are crossed again with the opposite slope.
        std::vector<double> ft = res.series.t, fy = res.series.dist;
        if (!growing) {
            const std::size_t imin =
                std::min_element(fy.begin(), fy.end()) - fy.begin();
            ft.resize(imin + 1);
            fy.resize(imin + 1);
        }
        int npts = 0;
        const double rate = hardyq::fit_log_slope(ft, fy, growing ? d0 * 1.2 : eopts.delta,
                                                  growing ? delta0 : d0 * 0.5, &npts);
        summary["fit_rate"] = rate;
        summary["fit_points"] = npts;
        std::printf("fit_rate %s\n", fmt17(rate).c_str());
    }
    hardyq::io::write_json(dir / "run_summary.json", summary);

    std::printf("mass_drift %s\n", fmt17(res.mass_drift).c_str());
    std::printf("dist_max %s\n", fmt17(res.dist_max).c_str());
    std::printf("e0 %s\n", fmt17(S.dich.e0).c_str());
    std::printf("outputs %s\n", dir.string().c_str());
    return 0;
}

int cmd_gn_check(ProblemFlags& f, std::string& profile_dir, int trials, unsigned seed) {
    json c = load_config(f);
    apply_problem(c, f);
    cfg(c, "profile", profile_dir);
    cfg(c, "trials", trials);
    if (c.contains("seed")) seed = c["seed"].get<unsigned>();

    hardyq::GroundStateProfile gs = load_or_compute(profile_dir, f);
    const hardyq::Params P = gs.P;
    auto dir = hardyq::io::resolve_outdir(f.out);

    const auto& g = gs.grid;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> amp(0.2, 2.0), width(0.3, 1.5), loc(-3.0, 1.6);
    double max_j = 0.0;
    std::string csv = "trial,J,ratio\n";
    for (int t = 0; t < trials; ++t) {
        std::vector<double> fvec(g.size(), 0.0);
        const int bumps = 1 + int(rng() % 3);
        for (int b = 0; b < bumps; ++b) {
            const double A = amp(rng), s = width(rng), mu = loc(rng);
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double x = (std::log(g.r[i]) - mu) / s;
                fvec[i] += A * std::exp(-0.5 * x * x);
            }
        }
        const double J = hardyq::evaluate_J(P, g, fvec);
        max_j = std::max(max_j, J);
        csv += fmt17(double(t)) + "," + fmt17(J) + "," + fmt17(J / gs.gn_constant) + "\n";
    }
    hardyq::io::write_file(dir / "gn_trials.csv", csv);

    // Scaling family: J is exactly invariant under amplitude scaling and
    // dyadic dilations (index shifts on the grid).
    double fam_min = 1e300, fam_max = -1e300;
    for (double lam : {0.5, 1.0, 2.0}) {
        for (double cc : {0.5, 1.0, 2.0}) {
            std::vector<double> fvec(g.size());
            for (std::size_t i = 0; i < g.size(); ++i)
                fvec[i] = cc * hardyq::profile_value(gs, lam * g.r[i]);
            const double J = hardyq::evaluate_J(P, g, fvec);
            fam_min = std::min(fam_min, J);
            fam_max = std::max(fam_max, J);
        }
    }
    const double spread = (fam_max - fam_min) / fam_max;

    json j;
    j["gn_constant"] = gs.gn_constant;
    j["gn_constant_discrete"] = hardyq::evaluate_J(P, g, gs.Q);
    j["trials"] = trials;
    j["max_trial_J"] = max_j;
    j["max_trial_ratio"] = max_j / gs.gn_constant;
    j["family_spread"] = spread;
    hardyq::io::write_json(dir / "gn_report.json", j);
    json echo{{"command", "gn-check"}, {"d", f.d},           {"p", f.p},
              {"a", f.a},              {"profile", profile_dir}, {"trials", trials},
              {"seed", seed}};
    hardyq::io::write_json(dir / "resolved_config.json", echo);

    std::printf("gn_constant %s\n", fmt17(gs.gn_constant).c_str());
    std::printf("max_trial_ratio %s\n", fmt17(max_j / gs.gn_constant).c_str());
    std::printf("family_spread %s\n", fmt17(spread).c_str());
    std::printf("outputs %s\n", dir.string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ground states and radial dynamics of the inverse-square NLS"};
    app.require_subcommand(1);

    ProblemFlags fg, fs, fsp, fe, fv, fgn;
    hardyq::ProfileOpts gopts;
    double scan_lo = 0.1, scan_hi = 10.0, scan_rmax = 30.0;
    int scan_count = 200;
    std::string sp_profile, ev_profile, vc_profile, gn_profile;
    bool sp_refine = false;
    std::string ev_direction = "standing";
    hardyq::EvolveOpts eopts, vopts;
    bool ev_backward = false;
    int gn_trials = 100;
    unsigned gn_seed = 20240817;

    auto* gcmd = app.add_subcommand("ground-state", "bisect the shooting parameter and build the profile");
    add_problem_flags(gcmd, fg);
    gcmd->add_option("--r-min", gopts.grid.r_min, "grid inner radius");
    gcmd->add_option("--per-octave", gopts.grid.per_octave, "grid nodes per octave");
    gcmd->add_option("--n", gopts.grid.n, "grid cells");
    gcmd->add_option("--b-lo", gopts.b_lo, "bracket low end (0: automatic)");
    gcmd->add_option("--b-hi", gopts.b_hi, "bracket high end (0: automatic)");
    gcmd->add_option("--bisect-tol", gopts.bisect_tol, "bisection width target");
    gcmd->add_option("--r-match", gopts.match.r_match, "outward/inward matching radius");

    auto* scmd = app.add_subcommand("classify-scan", "classify shots over a log-spaced b grid");
    add_problem_flags(scmd, fs);
    scmd->add_option("--b-lo", scan_lo, "scan low end");
    scmd->add_option("--b-hi", scan_hi, "scan high end");
    scmd->add_option("--count", scan_count, "number of scan points");
    scmd->add_option("--r-max", scan_rmax, "integration horizon");

    auto* spcmd = app.add_subcommand("spectrum", "linearization spectrum report for a stored profile");
    add_problem_flags(spcmd, fsp);
    spcmd->add_option("--profile", sp_profile, "directory with profile.csv/profile.json");
    spcmd->add_flag("--refine", sp_refine, "recompute on a doubled grid for stability checks");

    auto* ecmd = app.add_subcommand("evolve", "radial time evolution with modulation diagnostics");
    add_problem_flags(ecmd, fe);
    ecmd->add_option("--profile", ev_profile, "directory with stored profile (else computed)");
    ecmd->add_option("--direction", ev_direction,
                     "standing | stable-minus | stable-plus | unstable-minus | unstable-plus");
    ecmd->add_option("--dt", eopts.dt, "time step");
    ecmd->add_option("--T", eopts.t_end, "final time");
    ecmd->add_option("--delta", eopts.delta, "perturbation size");
    ecmd->add_option("--R", eopts.virial_R, "virial localization radius");
    ecmd->add_option("--record-every", eopts.record_every, "record stride in steps");
    ecmd->add_flag("--backward", ev_backward, "evolve backward via time-reversal symmetry");

    vopts.delta = 1e-4;
    auto* vcmd = app.add_subcommand("virial-check", "localized virial identity check on a perturbed run");
    add_problem_flags(vcmd, fv);
    vcmd->add_option("--profile", vc_profile, "directory with stored profile (else computed)");
    vcmd->add_option("--dt", vopts.dt, "time step");
    vcmd->add_option("--T", vopts.t_end, "final time");
    vcmd->add_option("--delta", vopts.delta, "perturbation size");
    vcmd->add_option("--R", vopts.virial_R, "virial localization radius");
    vcmd->add_option("--record-every", vopts.record_every, "record stride in steps");

    auto* gncmd = app.add_subcommand("gn-check", "interpolation-inequality sharpness trials");
    add_problem_flags(gncmd, fgn);
    gncmd->add_option("--profile", gn_profile, "directory with stored profile (else computed)");
    gncmd->add_option("--trials", gn_trials, "number of randomized trial functions");
    gncmd->add_option("--seed", gn_seed, "trial generator seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gcmd->parsed()) return cmd_ground_state(fg, gopts);
        if (scmd->parsed()) return cmd_classify_scan(fs, scan_lo, scan_hi, scan_count, scan_rmax);
        if (spcmd->parsed()) return cmd_spectrum(fsp, sp_profile, sp_refine);
        if (ecmd->parsed()) {
            std::string dir_copy = ev_direction;
            return cmd_evolve(fe, ev_profile, dir_copy, eopts, ev_backward, false);
        }
        if (vcmd->parsed()) {
            std::string dir_copy = "stable-minus";
            return cmd_evolve(fv, vc_profile, dir_copy, vopts, false, true);
        }
        if (gncmd->parsed()) return cmd_gn_check(fgn, gn_profile, gn_trials, gn_seed);
    } catch (const hardyq::validation_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const hardyq::convergence_error& e) {
        std::fprintf(stderr, "convergence failure: %s\n", e.what());
        return 3;
    } catch (const hardyq::integration_error& e) {
        std::fprintf(stderr, "integration failure: %s\n", e.what());
        return 3;
    } catch (const hardyq::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
