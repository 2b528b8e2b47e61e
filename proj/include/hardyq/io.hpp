#pragma once

#include "hardyq/evolve.hpp"
#include "hardyq/profile.hpp"
#include "hardyq/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace hardyq::io {

using json = nlohmann::ordered_json;

// 17 significant digits: enough for exact double round-trips in text outputs.
std::string fmt17(double x);

void write_file(const std::filesystem::path& p, const std::string& content);
std::string read_file(const std::filesystem::path& p);
json load_json(const std::filesystem::path& p);
void write_json(const std::filesystem::path& p, const json& j);

// Output directory: `flag` if nonempty, else $HARDYQ_OUTPUT_ROOT, else cwd.
// Created if missing.
std::filesystem::path resolve_outdir(const std::string& flag);

json params_json(const Params& P);

// Profile table (r, Q, Qr, Q1) as CSV plus the scalar summary as JSON.
void write_profile(const std::filesystem::path& dir, const GroundStateProfile& gs);
GroundStateProfile read_profile(const std::filesystem::path& dir);

void write_series(const std::filesystem::path& file, const TimeSeries& ts);

} // namespace hardyq::io
