#include "io.hpp"

#include "lvflow/error.hpp"
#include "lvflow/parallel.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace lvflow::app {

namespace fs = std::filesystem;

std::string format_double(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

fs::path temporary_sibling(const fs::path& path, const char* tag)
{
    fs::path tmp = path;
    tmp += "." + std::string(tag) + "-" + std::to_string(::getpid());
    return tmp;
}

void check_target(const fs::path& path)
{
    std::error_code ec;
    const fs::path parent = path.has_parent_path() ? path.parent_path() : fs::path(".");
    if (!fs::is_directory(parent, ec)) {
        throw IoError("output directory does not exist: " + parent.string());
    }
    if (fs::is_directory(path, ec)) {
        throw IoError("output path is a directory: " + path.string());
    }
}

double parse_number(std::string_view field, std::size_t line)
{
    double v = 0.0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw DomainError("trajectory csv line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

nlohmann::json number_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

} // namespace

void probe_writable(const fs::path& path)
{
    if (path == "-") {
        return;
    }
    check_target(path);
    const fs::path probe = temporary_sibling(path, "probe");
    {
        std::ofstream out(probe, std::ios::binary);
        if (!out) {
            throw IoError("cannot write to " + path.string());
        }
    }
    std::error_code ec;
    fs::remove(probe, ec);
}

void write_atomic(const fs::path& path, const std::string& content)
{
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    check_target(path);
    const fs::path tmp = temporary_sibling(path, "tmp");
    {
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        out.close();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed writing " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place: " + path.string());
    }
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string flow_grid_csv(const std::vector<FlowSample>& samples)
{
    std::string out = "x,k,G,wx,wk,divJx,divJk,divJ,divw,divw_defined\n";
    out.reserve(samples.size() * 200);
    for (const FlowSample& s : samples) {
        for (const double v : {s.point.x, s.point.k, s.density, s.w.vx, s.w.vk, s.div_jx, s.div_jk, s.div_j}) {
            out += format_double(v);
            out += ',';
        }
        if (s.div_w_defined) {
            out += format_double(s.div_w);
        }
        out += s.div_w_defined ? ",1\n" : ",0\n";
    }
    return out;
}

std::string trajectory_csv(const std::vector<Trajectory>& trajectories)
{
    std::string out = "tau,x,k,y,z,energy,mode\n";
    for (const Trajectory& t : trajectories) {
        const std::string mode(to_string(t.mode));
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (const double v : {t.times[i], t.points[i].x, t.points[i].k, t.species[i].y, t.species[i].z,
                                   t.energy[i]}) {
                out += format_double(v);
                out += ',';
            }
            out += mode;
            out += '\n';
        }
    }
    return out;
}

std::vector<Trajectory> parse_trajectory_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "tau,x,k,y,z,energy,mode") {
        throw DomainError("trajectory csv: expected header tau,x,k,y,z,energy,mode");
    }
    std::vector<Trajectory> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != 7) {
            throw DomainError("trajectory csv line " + std::to_string(line_no) + ": expected 7 fields");
        }
        FieldMode mode;
        if (fields[6] == "classical") {
            mode = FieldMode::classical;
        } else if (fields[6] == "quantum") {
            mode = FieldMode::quantum;
        } else {
            throw DomainError("trajectory csv line " + std::to_string(line_no) + ": unknown mode");
        }
        if (out.empty() || out.back().mode != mode) {
            out.push_back({});
            out.back().mode = mode;
        }
        Trajectory& t = out.back();
        const double tau = parse_number(fields[0], line_no);
        const PhasePoint p{parse_number(fields[1], line_no), parse_number(fields[2], line_no)};
        if (!std::isfinite(tau) || !std::isfinite(p.x) || !std::isfinite(p.k)) {
            throw DomainError("trajectory csv line " + std::to_string(line_no) + ": non-finite value");
        }
        if (!t.times.empty() && !(tau > t.times.back())) {
            throw DomainError("trajectory csv line " + std::to_string(line_no) + ": tau must increase");
        }
        t.times.push_back(tau);
        t.points.push_back(p);
        t.species.push_back(lv::to_species(p));
        t.energy.push_back(parse_number(fields[5], line_no));
    }
    if (out.empty()) {
        throw DomainError("trajectory csv has no samples");
    }
    return out;
}

nlohmann::json to_json(const ExtinctionReport& report, FieldMode mode)
{
    nlohmann::json windows = nlohmann::json::array();
    for (const ExtinctionWindow& w : report.windows) {
        windows.push_back({{"t_start", w.t_start},
                           {"t_end", w.t_end},
                           {"species", to_string(w.species)},
                           {"open_start", w.open_start},
                           {"open_end", w.open_end}});
    }
    nlohmann::json revivals = nlohmann::json::array();
    for (const Revival& r : report.revivals) {
        revivals.push_back(
            {{"t_start", r.t_start}, {"t_end", r.t_end}, {"species", to_string(r.species)}, {"duration", r.duration()}});
    }
    return {{"mode", to_string(mode)},
            {"windows", windows},
            {"revival_durations", report.revival_durations},
            {"revivals", revivals}};
}

nlohmann::json extinction_document(double threshold, const std::vector<Trajectory>& trajectories)
{
    nlohmann::json doc{{"threshold", threshold}, {"trajectories", nlohmann::json::array()}};
    for (const Trajectory& t : trajectories) {
        doc["trajectories"].push_back(to_json(dynamics::detect_extinctions(t, threshold), t.mode));
    }
    return doc;
}

nlohmann::json census_document(const std::vector<AlphaSummary>& sweep, const ScanConfig& cfg, double a)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const AlphaSummary& s : sweep) {
        nlohmann::json row{{"alpha", s.alpha}};
        if (s.error) {
            row["error"] = *s.error;
            rows.push_back(row);
            continue;
        }
        nlohmann::json zeros = nlohmann::json::array();
        for (const CriticalPoint& z : s.zeros) {
            zeros.push_back({{"x", z.location.x},
                             {"k", z.location.k},
                             {"kind", to_string(z.kind)},
                             {"winding", z.winding},
                             {"speed", z.speed},
                             {"eig_re", std::abs(z.jacobian_eigs[0].real())},
                             {"eig_im", std::abs(z.jacobian_eigs[0].imag())}});
        }
        row["n_components"] = s.n_components;
        row["n_zeros"] = s.zeros.size();
        row["zeros"] = zeros;
        row["boundary_winding"] = s.boundary_winding;
        row["displacement_of_dominant_zero"]
            = s.dominant_displacement ? nlohmann::json(*s.dominant_displacement) : nlohmann::json(nullptr);
        rows.push_back(row);
    }
    return {{"a", a},
            {"x_range", {cfg.x_range.lo, cfg.x_range.hi}},
            {"k_range", {cfg.k_range.lo, cfg.k_range.hi}},
            {"resolution", cfg.resolution},
            {"speed_threshold", cfg.speed_threshold},
            {"census", rows}};
}

nlohmann::json to_json(const verify::VerifyReport& report, const verify::VerifyOptions& options)
{
    nlohmann::json checks = nlohmann::json::array();
    for (const verify::CheckResult& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"description", c.description},
                          {"max_error", number_or_null(c.max_error)},
                          {"tolerance", c.tolerance},
                          {"evaluations", c.evaluations},
                          {"passed", c.passed}});
    }
    nlohmann::json curve = nlohmann::json::array();
    for (const verify::ConvergencePoint& p : report.convergence) {
        curve.push_back({{"eta_max", p.eta_max}, {"max_error", number_or_null(p.max_error)}});
    }
    return {{"all_passed", report.all_passed},
            {"eta_max", options.eta_max},
            {"perturbation", options.div_jx_perturbation},
            {"checks", checks},
            {"series_convergence", {{"alpha", 1.0}, {"a", 1.0}, {"points", curve}}},
            {"validity_note", report.validity_note}};
}

nlohmann::json run_metadata(const std::string& command, const nlohmann::json& config)
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return {{"command", command}, {"created_utc", stamp}, {"workers", worker_count()}, {"config", config}};
}

fs::path sidecar_path(const fs::path& output)
{
    fs::path p = output;
    p += ".meta.json";
    return p;
}

} // namespace lvflow::app
