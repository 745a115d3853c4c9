// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hsesim.h"

namespace hsecli {

// exit codes: 0 ok, 2 usage, 3 I/O, 4 numerical
struct CliError : std::runtime_error {
    CliError(int code, const std::string& what) : std::runtime_error(what), exit_code(code) {}
    int exit_code;
};

int exit_code_for(hse_status status);

// throws CliError carrying hse_last_error() detail when status != HSE_OK
void check(hse_status status, const std::string& context);

std::string fmt17(double v);

std::vector<std::string> split(const std::string& s, char sep);

// "0.38pi" | "pi" | "-0.25pi" | plain radians
double parse_angle(const std::string& text, const std::string& field);
double parse_double(const std::string& text, const std::string& field);
std::uint64_t parse_u64(const std::string& text, const std::string& field);
long parse_int(const std::string& text, const std::string& field);

/// All run settings, kept as strings until `resolve()` so that config-file
/// values and flags share one validation path.
struct RunConfig {
    std::string drive = "fibonacci";
    std::string theta_x = "0.38pi";
    std::string theta_y = "0.125pi";
    std::string theta_z = "0.22pi";
    std::string omega2;     // custom drive only
    std::string arcs;       // custom drive only: "begin:end:gx:gy:gz;..."
    std::string init = "0,0";
    std::string steps = "987";
    std::string kmax = "4";
    std::string samples = "geom:100";
    std::string seed = "1";
    std::string shots = "0";
    std::string l0 = "1";
    std::string l1 = "0.7";
    std::string pe = "0.92";
    std::string out;
    std::string jobs = "1";
    std::string grid;
    std::string trials = "1";
    std::string tlist = "10,100,1000,10000";

    // pointers into this object, keyed by config/flag name
    std::vector<std::pair<std::string, std::string*>> fields();
};

/// `key = value` per line, '#' comments; unknown keys are usage errors.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Resolved, validated settings.
struct Resolved {
    hse_protocol* protocol = nullptr; // owned
    std::string drive;
    double theta_x = 0.0;
    double theta_y = 0.0;
    double theta_z = 0.0;
    double omega2 = 0.0;
    std::string arcs_text;
    std::string init_text; // canonical
    hse_spinor initial{};
    std::uint64_t steps = 1;
    int kmax = 1;
    std::string samples_text;
    std::vector<std::uint64_t> sample_times;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    hse_tomo_calibration cal{};
    std::string out;
    int jobs = 1;
    std::vector<std::pair<double, double>> grid; // drive's two active angles
    std::string grid_text;
    int trials = 1;
    std::vector<std::uint64_t> tlist;
    std::string tlist_text;

    ~Resolved();
    Resolved() = default;
    Resolved(Resolved&&) noexcept;
    Resolved& operator=(Resolved&&) noexcept;
    Resolved(const Resolved&) = delete;
    Resolved& operator=(const Resolved&) = delete;

    /// Protocol for angle overrides (sweep grid points); caller owns.
    hse_protocol* make_protocol(double a1, double a2) const;
};

/// Validate + build protocol, initial state and sample times.
/// `haar_stream` selects the substream for `init = haar-random`.
Resolved resolve(const RunConfig& cfg, std::uint64_t haar_stream = 0);

/// Canonical `# key = value` header block; re-running it reproduces the
/// emitting command bit-identically.
std::string config_header(const std::string& banner, const Resolved& r,
                          const std::vector<std::string>& keys);

/// Writes `text` to `r.out` (CliError 3 on failure).
void write_output_file(const std::string& path, const std::string& text);

// ---- plot -----------------------------------------------------------------

struct PlotSeries {
    int block = 0;
    int k = 1;
    std::vector<std::pair<double, double>> points; // (T, delta)
};

/// Parses a simulate/sweep CSV; throws CliError 2 naming the bad line.
std::vector<PlotSeries> parse_delta_csv(const std::string& path);

/// Self-contained SVG, log-log axes, one polyline per series;
/// byte-deterministic for fixed input.
std::string render_svg(const std::vector<PlotSeries>& series);

} // namespace hsecli
