#pragma once

#include "lvflow/critical_points.hpp"
#include "lvflow/dynamics.hpp"
#include "lvflow/verify.hpp"
#include "lvflow/wigner_flow.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace lvflow::app {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Throws IoError unless `path` can be created (or replaced) as a regular file.
/// Leaves nothing behind.
void probe_writable(const std::filesystem::path& path);

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so readers never observe a partial file. "-" writes to stdout.
void write_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Columns: x,k,G,wx,wk,divJx,divJk,divJ,divw,divw_defined (divw is empty when undefined).
std::string flow_grid_csv(const std::vector<FlowSample>& samples);

// Columns: tau,x,k,y,z,energy,mode; trajectories are written one after another.
std::string trajectory_csv(const std::vector<Trajectory>& trajectories);

/// Parses trajectory_csv output back into one Trajectory per mode, in file order.
/// Throws DomainError on malformed content.
std::vector<Trajectory> parse_trajectory_csv(const std::string& text);

nlohmann::json to_json(const ExtinctionReport& report, FieldMode mode);
nlohmann::json extinction_document(double threshold, const std::vector<Trajectory>& trajectories);
nlohmann::json census_document(const std::vector<AlphaSummary>& sweep, const ScanConfig& cfg, double a);
nlohmann::json to_json(const verify::VerifyReport& report, const verify::VerifyOptions& options);

/// Run metadata (time stamp, command line, worker count) for the sidecar file.
nlohmann::json run_metadata(const std::string& command, const nlohmann::json& config);

/// path + ".meta.json"
std::filesystem::path sidecar_path(const std::filesystem::path& output);

} // namespace lvflow::app
