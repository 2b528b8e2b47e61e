#include "hardyq/io.hpp"

#include "hardyq/errors.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hardyq::io {

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    if (!f) throw io_error("cannot open for writing: " + p.string());
    f << content;
    if (!f.flush()) throw io_error("write failed: " + p.string());
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw io_error("cannot open: " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

json load_json(const std::filesystem::path& p) {
    try {
        return json::parse(read_file(p));
    } catch (const nlohmann::json::exception& e) {
        throw io_error("bad JSON in " + p.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& p, const json& j) {
    write_file(p, j.dump(2) + "\n");
}

std::filesystem::path resolve_outdir(const std::string& flag) {
    std::filesystem::path dir;
    if (!flag.empty()) {
        dir = flag;
    } else if (const char* env = std::getenv("HARDYQ_OUTPUT_ROOT"); env && *env) {
        dir = env;
    } else {
        dir = ".";
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec && !std::filesystem::is_directory(dir))
        throw io_error("cannot create output directory " + dir.string());
    return dir;
}

json params_json(const Params& P) {
    return json{{"d", P.d}, {"p", P.p}, {"a", P.a}};
}

void write_profile(const std::filesystem::path& dir, const GroundStateProfile& gs) {
    std::string csv = "r,Q,Qr,Q1\n";
    for (std::size_t i = 0; i < gs.grid.size(); ++i) {
        csv += fmt17(gs.grid.r[i]);
        csv += ',';
        csv += fmt17(gs.Q[i]);
        csv += ',';
        csv += fmt17(gs.Qr[i]);
        csv += ',';
        csv += fmt17(gs.Q1[i]);
        csv += '\n';
    }
    write_file(dir / "profile.csv", csv);

    json j;
    j["params"] = params_json(gs.P);
    j["grid"] = {{"r_min", gs.grid.spec.r_min},
                 {"per_octave", gs.grid.spec.per_octave},
                 {"n", gs.grid.spec.n}};
    j["beta"] = gs.P.beta();
    j["gamma0"] = gs.P.gamma0();
    j["b0"] = gs.b0;
    j["c0"] = gs.c0;
    j["mass"] = gs.mass;
    j["kinetic_a"] = gs.kinetic_a;
    j["lp_norm"] = gs.lp_norm;
    j["energy"] = gs.energy;
    j["gn_constant"] = gs.gn_constant;
    j["seam_gap"] = gs.seam_gap;
    j["match_mismatch"] = gs.match_mismatch;
    j["bisect_iterations"] = gs.bisect_iterations;
    j["undecided_assignments"] = gs.undecided_assignments;
    j["bracket"] = {gs.bracket_lo, gs.bracket_hi};
    write_json(dir / "profile.json", j);
}

GroundStateProfile read_profile(const std::filesystem::path& dir) {
    json j = load_json(dir / "profile.json");
    Params P(j["params"]["d"].get<int>(), j["params"]["p"].get<double>(),
             j["params"]["a"].get<double>());
    GridSpec spec{j["grid"]["r_min"].get<double>(), j["grid"]["per_octave"].get<int>(),
                  j["grid"]["n"].get<int>()};
    GroundStateProfile gs{P, RadialGrid::make(P.d, spec)};
    gs.b0 = j["b0"].get<double>();
    gs.c0 = j["c0"].get<double>();
    gs.mass = j["mass"].get<double>();
    gs.kinetic_a = j["kinetic_a"].get<double>();
    gs.lp_norm = j["lp_norm"].get<double>();
    gs.energy = j["energy"].get<double>();
    gs.gn_constant = j["gn_constant"].get<double>();
    gs.seam_gap = j["seam_gap"].get<double>();
    gs.match_mismatch = j["match_mismatch"].get<double>();

    std::istringstream csv(read_file(dir / "profile.csv"));
    std::string line;
    std::getline(csv, line); // header
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        double r, Q, Qr, Q1;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r, &Q, &Qr, &Q1) != 4)
            throw io_error("bad profile row: " + line);
        gs.Q.push_back(Q);
        gs.Qr.push_back(Qr);
        gs.Q1.push_back(Q1);
    }
    if (gs.Q.size() != gs.grid.size()) throw io_error("profile row count mismatch");
    return gs;
}

void write_series(const std::filesystem::path& file, const TimeSeries& ts) {
    std::string csv = "t,theta,alpha,dist,kin,mass,energy,VR,Vdot,AR\n";
    for (std::size_t i = 0; i < ts.t.size(); ++i) {
        const double* cols[] = {&ts.t[i],    &ts.theta[i], &ts.alpha[i], &ts.dist[i],
                                &ts.kin[i],  &ts.mass[i],  &ts.energy[i],
                                &ts.VR[i],   &ts.Vdot[i],  &ts.AR[i]};
        for (std::size_t c = 0; c < 10; ++c) {
            csv += fmt17(*cols[c]);
            csv += c + 1 < 10 ? ',' : '\n';
        }
    }
    write_file(file, csv);
}

} // namespace hardyq::io
