// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "cli_util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hsecli {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int exit_code_for(hse_status status) {
    switch (status) {
    case HSE_OK:
        return 0;
    case HSE_ERR_INVALID_ARGUMENT:
    case HSE_ERR_PARSE:
        return 2;
    case HSE_ERR_IO:
        return 3;
    default:
        return 4;
    }
}

void check(hse_status status, const std::string& context) {
    if (status != HSE_OK) {
        std::string detail = hse_last_error();
        if (detail.empty()) {
            detail = hse_status_message(status);
        }
        throw CliError(exit_code_for(status), context + ": " + detail);
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& text, const std::string& field) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        throw CliError(2, "invalid value for " + field + ": '" + text + "'");
    }
    return v;
}

double parse_angle(const std::string& text, const std::string& field) {
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        const std::string head = text.substr(0, text.size() - 2);
        if (head.empty()) {
            return kPi;
        }
        if (head == "-") {
            return -kPi;
        }
        return parse_double(head, field) * kPi;
    }
    return parse_double(text, field);
}

std::uint64_t parse_u64(const std::string& text, const std::string& field) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const unsigned long long v = std::strtoull(begin, &end, 10);
    if (end == begin || *end != '\0' || text.find('-') != std::string::npos) {
        throw CliError(2, "invalid value for " + field + ": '" + text + "'");
    }
    return v;
}

long parse_int(const std::string& text, const std::string& field) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw CliError(2, "invalid value for " + field + ": '" + text + "'");
    }
    return v;
}

std::vector<std::pair<std::string, std::string*>> RunConfig::fields() {
    return {
        {"drive", &drive},     {"theta_x", &theta_x}, {"theta_y", &theta_y},
        {"theta_z", &theta_z}, {"omega2", &omega2},   {"arcs", &arcs},
        {"init", &init},       {"steps", &steps},     {"kmax", &kmax},
        {"samples", &samples}, {"seed", &seed},       {"shots", &shots},
        {"l0", &l0},           {"l1", &l1},           {"pe", &pe},
        {"out", &out},         {"jobs", &jobs},       {"grid", &grid},
        {"trials", &trials},   {"tlist", &tlist},
    };
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError(3, "cannot open config file: " + path);
    }
    RunConfig probe;
    std::map<std::string, std::string> known;
    for (auto& [key, ptr] : probe.fields()) {
        known[key];
        (void)ptr;
    }
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw CliError(2, path + " line " + std::to_string(lineno) +
                                  ": expected `key = value`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (known.find(key) == known.end()) {
            throw CliError(2, path + " line " + std::to_string(lineno) +
                                  ": unknown config key '" + key + "'");
        }
        values[key] = value;
    }
    return values;
}

Resolved::~Resolved() {
    hse_protocol_free(protocol);
}

Resolved::Resolved(Resolved&& other) noexcept {
    *this = std::move(other);
}

Resolved& Resolved::operator=(Resolved&& other) noexcept {
    if (this != &other) {
        hse_protocol_free(protocol);
        protocol = other.protocol;
        other.protocol = nullptr;
        drive = std::move(other.drive);
        theta_x = other.theta_x;
        theta_y = other.theta_y;
        theta_z = other.theta_z;
        omega2 = other.omega2;
        arcs_text = std::move(other.arcs_text);
        init_text = std::move(other.init_text);
        initial = other.initial;
        steps = other.steps;
        kmax = other.kmax;
        samples_text = std::move(other.samples_text);
        sample_times = std::move(other.sample_times);
        seed = other.seed;
        shots = other.shots;
        cal = other.cal;
        out = std::move(other.out);
        jobs = other.jobs;
        grid = std::move(other.grid);
        grid_text = std::move(other.grid_text);
        trials = other.trials;
        tlist = std::move(other.tlist);
        tlist_text = std::move(other.tlist_text);
    }
    return *this;
}

namespace {

hse_protocol* build_protocol(const std::string& drive, double tx, double ty,
                             double tz, double omega2, const std::string& arcs) {
    hse_protocol* p = nullptr;
    if (drive == "floquet") {
        check(hse_protocol_floquet(tx, ty, &p), "drive");
    } else if (drive == "smoothqp") {
        check(hse_protocol_smooth_qp(&p), "drive");
    } else if (drive == "fibonacci") {
        check(hse_protocol_fibonacci(tx, tz, &p), "drive");
    } else if (drive == "custom") {
        if (arcs.empty()) {
            throw CliError(2, "drive 'custom' requires arcs");
        }
        std::vector<double> begins;
        std::vector<double> ends;
        std::vector<double> kicks;
        for (const std::string& part : split(arcs, ';')) {
            if (part.empty()) {
                continue;
            }
            const std::vector<std::string> f = split(part, ':');
            if (f.size() != 5) {
                throw CliError(2, "arcs: expected begin:end:gx:gy:gz, got '" + part + "'");
            }
            begins.push_back(parse_angle(f[0], "arcs"));
            ends.push_back(parse_angle(f[1], "arcs"));
            kicks.push_back(parse_double(f[2], "arcs"));
            kicks.push_back(parse_double(f[3], "arcs"));
            kicks.push_back(parse_double(f[4], "arcs"));
        }
        check(hse_protocol_custom(omega2, begins.data(), ends.data(), kicks.data(),
                                  begins.size(), &p),
              "arcs");
    } else {
        throw CliError(2, "unknown drive '" + drive +
                              "' (expected floquet|smoothqp|fibonacci|custom)");
    }
    return p;
}

} // namespace

hse_protocol* Resolved::make_protocol(double a1, double a2) const {
    if (drive == "floquet") {
        return build_protocol(drive, a1, a2, theta_z, omega2, arcs_text);
    }
    if (drive == "fibonacci") {
        return build_protocol(drive, a1, theta_y, a2, omega2, arcs_text);
    }
    throw CliError(2, "parameter grids require a floquet or fibonacci drive");
}

Resolved resolve(const RunConfig& cfg, std::uint64_t haar_stream) {
    Resolved r;
    r.drive = cfg.drive;
    r.theta_x = parse_angle(cfg.theta_x, "theta_x");
    r.theta_y = parse_angle(cfg.theta_y, "theta_y");
    r.theta_z = parse_angle(cfg.theta_z, "theta_z");
    if (!cfg.omega2.empty()) {
        if (cfg.drive != "custom") {
            throw CliError(2, "omega2 can only be set for drive 'custom'");
        }
        r.omega2 = parse_angle(cfg.omega2, "omega2");
    } else if (cfg.drive == "custom") {
        throw CliError(2, "drive 'custom' requires omega2");
    }
    r.arcs_text = cfg.arcs;
    if (!cfg.arcs.empty() && cfg.drive != "custom") {
        throw CliError(2, "arcs can only be set for drive 'custom'");
    }
    r.steps = parse_u64(cfg.steps, "steps");
    if (r.steps < 1) {
        throw CliError(2, "steps must be >= 1");
    }
    const long km = parse_int(cfg.kmax, "kmax");
    if (km < 1 || km > 8) {
        throw CliError(2, "kmax must be in [1, 8]");
    }
    r.kmax = static_cast<int>(km);
    r.seed = parse_u64(cfg.seed, "seed");
    r.shots = parse_u64(cfg.shots, "shots");
    r.cal = hse_tomo_calibration{parse_double(cfg.l0, "l0"), parse_double(cfg.l1, "l1"),
                                 parse_double(cfg.pe, "pe")};
    r.out = cfg.out;
    const long jobs = parse_int(cfg.jobs, "jobs");
    if (jobs < 1) {
        throw CliError(2, "jobs must be >= 1");
    }
    r.jobs = static_cast<int>(jobs);
    const long trials = parse_int(cfg.trials, "trials");
    if (trials < 1) {
        throw CliError(2, "trials must be >= 1");
    }
    r.trials = static_cast<int>(trials);

    r.protocol = build_protocol(cfg.drive, r.theta_x, r.theta_y, r.theta_z, r.omega2,
                                cfg.arcs);

    // initial state
    if (cfg.init == "haar-random") {
        check(hse_spinor_haar(r.seed, haar_stream, &r.initial), "init");
        r.init_text = "haar-random";
    } else if (cfg.init.rfind("floquet-eigenstate", 0) == 0) {
        if (cfg.drive != "floquet") {
            throw CliError(2, "init 'floquet-eigenstate' requires drive 'floquet'");
        }
        int which = 0;
        const std::string rest = cfg.init.substr(std::string("floquet-eigenstate").size());
        if (rest == ":1") {
            which = 1;
        } else if (!rest.empty() && rest != ":0") {
            throw CliError(2, "invalid value for init: '" + cfg.init + "'");
        }
        hse_spinor first{};
        hse_spinor second{};
        check(hse_floquet_eigenstates(r.theta_x, r.theta_y, &first, &second), "init");
        r.initial = which == 0 ? first : second;
        r.init_text = which == 0 ? "floquet-eigenstate:0" : "floquet-eigenstate:1";
    } else {
        const std::vector<std::string> parts = split(cfg.init, ',');
        if (parts.size() != 2) {
            throw CliError(2, "invalid value for init: '" + cfg.init +
                                  "' (expected theta,phi or haar-random or "
                                  "floquet-eigenstate)");
        }
        const double theta = parse_angle(parts[0], "init");
        const double phi = parse_angle(parts[1], "init");
        check(hse_spinor_from_angles(theta, phi, &r.initial), "init");
        r.init_text = fmt17(theta) + "," + fmt17(phi);
    }

    // sample times
    r.samples_text = cfg.samples;
    if (cfg.samples == "all") {
        r.sample_times.resize(r.steps);
        for (std::uint64_t t = 0; t < r.steps; ++t) {
            r.sample_times[t] = t + 1;
        }
    } else if (cfg.samples.rfind("geom:", 0) == 0) {
        const std::uint64_t target = parse_u64(cfg.samples.substr(5), "samples");
        if (target < 2) {
            throw CliError(2, "samples geom:N requires N >= 2");
        }
        size_t count = 0;
        hse_status st = hse_sample_times(r.steps, target, cfg.drive == "fibonacci",
                                         nullptr, &count);
        if (st != HSE_ERR_BUFFER_TOO_SMALL) {
            check(st, "samples");
        }
        r.sample_times.resize(count);
        check(hse_sample_times(r.steps, target, cfg.drive == "fibonacci",
                               r.sample_times.data(), &count),
              "samples");
        r.sample_times.resize(count);
    } else if (cfg.samples.rfind("list:", 0) == 0) {
        for (const std::string& item : split(cfg.samples.substr(5), ',')) {
            const std::uint64_t t = parse_u64(item, "samples");
            if (t < 1 || t > r.steps) {
                throw CliError(2, "samples: time " + item + " outside [1, steps]");
            }
            r.sample_times.push_back(t);
        }
        std::sort(r.sample_times.begin(), r.sample_times.end());
        r.sample_times.erase(
            std::unique(r.sample_times.begin(), r.sample_times.end()),
            r.sample_times.end());
        if (r.sample_times.empty()) {
            throw CliError(2, "samples: empty list");
        }
    } else {
        throw CliError(2, "invalid value for samples: '" + cfg.samples +
                              "' (expected geom:N, list:t1,t2,... or all)");
    }

    // grid (two active drive angles per point)
    r.grid_text = cfg.grid;
    if (!cfg.grid.empty()) {
        for (const std::string& item : split(cfg.grid, ',')) {
            const std::vector<std::string> pair = split(item, ':');
            if (pair.size() != 2) {
                throw CliError(2, "grid: expected angle:angle, got '" + item + "'");
            }
            r.grid.emplace_back(parse_angle(pair[0], "grid"),
                                parse_angle(pair[1], "grid"));
        }
    }

    // twirl T list
    r.tlist_text = cfg.tlist;
    for (const std::string& item : split(cfg.tlist, ',')) {
        const std::uint64_t t = parse_u64(item, "tlist");
        if (t < 1) {
            throw CliError(2, "tlist: times start at 1");
        }
        r.tlist.push_back(t);
    }
    std::sort(r.tlist.begin(), r.tlist.end());
    r.tlist.erase(std::unique(r.tlist.begin(), r.tlist.end()), r.tlist.end());

    return r;
}

std::string config_header(const std::string& banner, const Resolved& r,
                          const std::vector<std::string>& keys) {
    std::ostringstream os;
    os << "# hsesim " << banner << "\n";
    auto emit = [&os](const std::string& key, const std::string& value) {
        os << "# " << key << " = " << value << "\n";
    };
    for (const std::string& key : keys) {
        if (key == "drive") {
            emit(key, r.drive);
        } else if (key == "theta_x") {
            emit(key, fmt17(r.theta_x));
        } else if (key == "theta_y") {
            emit(key, fmt17(r.theta_y));
        } else if (key == "theta_z") {
            emit(key, fmt17(r.theta_z));
        } else if (key == "omega2") {
            emit(key, fmt17(r.omega2));
        } else if (key == "arcs") {
            emit(key, r.arcs_text);
        } else if (key == "init") {
            emit(key, r.init_text);
        } else if (key == "steps") {
            emit(key, std::to_string(r.steps));
        } else if (key == "kmax") {
            emit(key, std::to_string(r.kmax));
        } else if (key == "samples") {
            emit(key, r.samples_text);
        } else if (key == "seed") {
            emit(key, std::to_string(r.seed));
        } else if (key == "shots") {
            emit(key, std::to_string(r.shots));
        } else if (key == "l0") {
            emit(key, fmt17(r.cal.l0));
        } else if (key == "l1") {
            emit(key, fmt17(r.cal.l1));
        } else if (key == "pe") {
            emit(key, fmt17(r.cal.pe));
        } else if (key == "out") {
            emit(key, r.out);
        } else if (key == "jobs") {
            emit(key, std::to_string(r.jobs));
        } else if (key == "grid") {
            emit(key, r.grid_text);
        } else if (key == "trials") {
            emit(key, std::to_string(r.trials));
        } else if (key == "tlist") {
            emit(key, r.tlist_text);
        }
    }
    return os.str();
}

void write_output_file(const std::string& path, const std::string& text) {
    if (path.empty()) {
        throw CliError(2, "missing output path (--out)");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CliError(3, "cannot open output file: " + path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw CliError(3, "write failed: " + path);
    }
}

std::vector<PlotSeries> parse_delta_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError(3, "cannot open CSV: " + path);
    }
    std::vector<PlotSeries> series;
    std::map<std::pair<int, int>, std::size_t> index;
    int block = 0;
    std::string line;
    std::size_t lineno = 0;
    bool any_row = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            if (line.rfind("## block", 0) == 0) {
                const auto eq = line.find('=');
                if (eq != std::string::npos) {
                    std::string v = line.substr(eq + 1);
                    const auto a = v.find_first_not_of(" \t");
                    const auto b = v.find_last_not_of(" \t");
                    if (a != std::string::npos) {
                        block = static_cast<int>(
                            parse_int(v.substr(a, b - a + 1), "block"));
                    }
                }
            }
            continue;
        }
        if (line == "T,k,delta") {
            continue;
        }
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 3) {
            throw CliError(2, path + " line " + std::to_string(lineno) +
                                  ": expected T,k,delta");
        }
        const double t = parse_double(f[0], path + " line " + std::to_string(lineno));
        const long k = parse_int(f[1], path + " line " + std::to_string(lineno));
        const double delta =
            parse_double(f[2], path + " line " + std::to_string(lineno));
        const std::pair<int, int> key{block, static_cast<int>(k)};
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, series.size()).first;
            series.push_back(PlotSeries{block, static_cast<int>(k), {}});
        }
        series[it->second].points.emplace_back(t, delta);
        any_row = true;
    }
    if (!any_row) {
        throw CliError(2, path + ": no data rows");
    }
    return series;
}

namespace {

const char* series_color(int k) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return palette[(k - 1) % 8];
}

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

std::string render_svg(const std::vector<PlotSeries>& series) {
    double min_x = 0.0;
    double max_x = 0.0;
    double min_y = 0.0;
    double max_y = 0.0;
    bool have = false;
    for (const PlotSeries& s : series) {
        for (const auto& [t, d] : s.points) {
            if (!(t > 0.0) || !(d > 0.0)) {
                continue; // log axes: skip nonpositive points
            }
            const double lx = std::log10(t);
            const double ly = std::log10(d);
            if (!have) {
                min_x = max_x = lx;
                min_y = max_y = ly;
                have = true;
            } else {
                min_x = std::min(min_x, lx);
                max_x = std::max(max_x, lx);
                min_y = std::min(min_y, ly);
                max_y = std::max(max_y, ly);
            }
        }
    }
    if (!have) {
        throw CliError(2, "plot: no positive data points for log axes");
    }
    min_x = std::floor(min_x);
    max_x = std::ceil(max_x);
    min_y = std::floor(min_y);
    max_y = std::ceil(max_y);
    if (max_x - min_x < 1.0) {
        max_x = min_x + 1.0;
    }
    if (max_y - min_y < 1.0) {
        max_y = min_y + 1.0;
    }

    const double x0 = 80.0;
    const double x1 = 680.0;
    const double y0 = 440.0; // bottom
    const double y1 = 40.0;  // top
    auto px = [&](double lx) {
        return x0 + (lx - min_x) / (max_x - min_x) * (x1 - x0);
    };
    auto py = [&](double ly) {
        return y0 + (ly - min_y) / (max_y - min_y) * (y1 - y0);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"500\" "
           "viewBox=\"0 0 720 500\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"720\" height=\"500\" fill=\"white\"/>\n";
    // decade grid and tick labels
    for (int d = static_cast<int>(min_x); d <= static_cast<int>(max_x); ++d) {
        const double x = px(d);
        svg << "<line x1=\"" << fmt2(x) << "\" y1=\"" << fmt2(y0) << "\" x2=\""
            << fmt2(x) << "\" y2=\"" << fmt2(y1)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(y0 + 20.0)
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">1e"
            << d << "</text>\n";
    }
    for (int d = static_cast<int>(min_y); d <= static_cast<int>(max_y); ++d) {
        const double y = py(d);
        svg << "<line x1=\"" << fmt2(x0) << "\" y1=\"" << fmt2(y) << "\" x2=\""
            << fmt2(x1) << "\" y2=\"" << fmt2(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt2(x0 - 8.0) << "\" y=\"" << fmt2(y + 4.0)
            << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">1e"
            << d << "</text>\n";
    }
    svg << "<rect x=\"" << fmt2(x0) << "\" y=\"" << fmt2(y1) << "\" width=\""
        << fmt2(x1 - x0) << "\" height=\"" << fmt2(y0 - y1)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<text x=\"" << fmt2((x0 + x1) / 2.0) << "\" y=\"480\" "
           "font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">"
           "T</text>\n";
    svg << "<text x=\"20\" y=\"" << fmt2((y0 + y1) / 2.0)
        << "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 20 "
        << fmt2((y0 + y1) / 2.0) << ")\">delta</text>\n";

    int legend_row = 0;
    std::vector<int> legend_seen;
    for (const PlotSeries& s : series) {
        std::ostringstream pts;
        bool first = true;
        for (const auto& [t, d] : s.points) {
            if (!(t > 0.0) || !(d > 0.0)) {
                continue;
            }
            if (!first) {
                pts << ' ';
            }
            pts << fmt2(px(std::log10(t))) << ',' << fmt2(py(std::log10(d)));
            first = false;
        }
        if (first) {
            continue; // nothing plottable in this series
        }
        svg << "<polyline points=\"" << pts.str() << "\" fill=\"none\" stroke=\""
            << series_color(s.k) << "\" stroke-width=\"1.5\"/>\n";
        if (std::find(legend_seen.begin(), legend_seen.end(), s.k) ==
            legend_seen.end()) {
            legend_seen.push_back(s.k);
            const double ly = 50.0 + 18.0 * legend_row;
            svg << "<line x1=\"600\" y1=\"" << fmt2(ly) << "\" x2=\"630\" y2=\""
                << fmt2(ly) << "\" stroke=\"" << series_color(s.k)
                << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"636\" y=\"" << fmt2(ly + 4.0)
                << "\" font-family=\"monospace\" font-size=\"12\">k=" << s.k
                << "</text>\n";
            ++legend_row;
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace hsecli
