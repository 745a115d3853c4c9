// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "hsesim/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace hsesim {

namespace {

void format17(char* buf, std::size_t n, double v) {
    std::snprintf(buf, n, "%.17g", v);
}

} // namespace

void TomoCalibration::validate() const {
    if (!(l0 > l1) || !(l1 > 0.0)) {
        throw std::invalid_argument("TomoCalibration: requires l0 > l1 > 0");
    }
    if (!(pe > 0.0) || !(pe <= 1.0)) {
        throw std::invalid_argument("TomoCalibration: requires 0 < pe <= 1");
    }
}

TomoRecord pl_expectations(const DensityMatrix2& rho, const TomoCalibration& cal) {
    cal.validate();
    const double p0 = rho.at(0, 0).real();
    const double p1 = rho.at(1, 1).real();
    const double alpha = rho.at(0, 1).real();
    const double beta = rho.at(0, 1).imag();
    TomoRecord rec;
    rec.shots = 0;
    rec.e[0] = cal.l0 * p0 + cal.l1 * p1;
    rec.e[1] = cal.l0 * p1 + cal.l1 * p0;
    rec.e[2] = cal.l0 * (1.0 - 2.0 * beta) / 2.0 + cal.l1 * (1.0 + 2.0 * beta) / 2.0;
    rec.e[3] = cal.l0 * (1.0 + 2.0 * beta) / 2.0 + cal.l1 * (1.0 - 2.0 * beta) / 2.0;
    rec.e[4] = cal.l0 * (1.0 - 2.0 * alpha) / 2.0 + cal.l1 * (1.0 + 2.0 * alpha) / 2.0;
    rec.e[5] = cal.l0 * (1.0 + 2.0 * alpha) / 2.0 + cal.l1 * (1.0 - 2.0 * alpha) / 2.0;
    return rec;
}

TomoRecord add_shot_noise(const TomoRecord& record, std::uint64_t shots, Rng& rng) {
    if (shots == 0) {
        throw std::invalid_argument("add_shot_noise: shots must be >= 1");
    }
    TomoRecord out;
    out.shots = shots;
    const double n = static_cast<double>(shots);
    for (std::size_t i = 0; i < 6; ++i) {
        if (record.e[i] < 0.0) {
            throw std::invalid_argument("add_shot_noise: negative expectation");
        }
        out.e[i] = static_cast<double>(sample_poisson(rng, n * record.e[i])) / n;
    }
    return out;
}

ReconstructedState reconstruct(const TomoRecord& record, const TomoCalibration& cal) {
    const double l01 = cal.l01();
    if (!(l01 > 0.0)) {
        throw std::invalid_argument("reconstruct: calibration requires L01 = l0 - l1 > 0");
    }
    ReconstructedState s;
    s.p0 = 0.5 + (record.e[0] - record.e[1]) / (2.0 * l01);
    s.p1 = 1.0 - s.p0;
    s.alpha = (record.e[5] - record.e[4]) / (2.0 * l01);
    s.beta = (record.e[3] - record.e[2]) / (2.0 * l01);
    return s;
}

DensityMatrix2 depolarize(const DensityMatrix2& rho, double pe) {
    if (!(pe > 0.0) || !(pe <= 1.0)) {
        throw std::invalid_argument("depolarize: requires 0 < pe <= 1");
    }
    BlochVector r = rho.bloch();
    r.x *= pe;
    r.y *= pe;
    r.z *= pe;
    return DensityMatrix2::from_bloch(r);
}

ReconstructedState polarization_correct(const ReconstructedState& state, double pe) {
    if (!(pe > 0.0)) {
        throw std::invalid_argument("polarization_correct: pe must be > 0");
    }
    ReconstructedState out;
    out.p0 = 0.5 + (state.p0 - 0.5) / pe;
    out.p1 = 1.0 - out.p0;
    out.alpha = state.alpha / pe;
    out.beta = state.beta / pe;
    return out;
}

Purified purify(const ReconstructedState& state) {
    const BlochVector r = state.bloch();
    const double len = r.length();
    if (len <= 1e-9) {
        throw std::invalid_argument("purify: Bloch norm <= 1e-9, direction undefined");
    }
    const double theta = std::acos(std::clamp(r.z / len, -1.0, 1.0));
    const double phi = std::atan2(r.y, r.x);
    return Purified{bloch_to_spinor(theta, phi), len};
}

void write_record_file(std::ostream& out, const RecordFile& file) {
    file.calibration.validate();
    char buf[32];
    format17(buf, sizeof buf, file.calibration.l0);
    out << "# l0 = " << buf << "\n";
    format17(buf, sizeof buf, file.calibration.l1);
    out << "# l1 = " << buf << "\n";
    format17(buf, sizeof buf, file.calibration.pe);
    out << "# pe = " << buf << "\n";
    out << "# seed = " << file.seed << "\n";
    for (const auto& [t, rec] : file.records) {
        out << t;
        for (double e : rec.e) {
            format17(buf, sizeof buf, e);
            out << ' ' << buf;
        }
        out << ' ' << rec.shots << "\n";
    }
}

RecordFile read_record_file(std::istream& in) {
    RecordFile file;
    bool have_l0 = false;
    bool have_l1 = false;
    bool have_pe = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            std::string eq;
            hs >> key >> eq;
            if (eq != "=") {
                continue; // free-form comment
            }
            if (key == "l0" && (hs >> file.calibration.l0)) {
                have_l0 = true;
            } else if (key == "l1" && (hs >> file.calibration.l1)) {
                have_l1 = true;
            } else if (key == "pe" && (hs >> file.calibration.pe)) {
                have_pe = true;
            } else if (key == "seed") {
                if (!(hs >> file.seed)) {
                    throw RecordParseError("record file line " + std::to_string(lineno) +
                                               ": bad seed value",
                                           lineno);
                }
            }
            continue;
        }
        std::istringstream rs(line);
        std::uint64_t t = 0;
        TomoRecord rec;
        if (!(rs >> t >> rec.e[0] >> rec.e[1] >> rec.e[2] >> rec.e[3] >> rec.e[4] >>
              rec.e[5] >> rec.shots)) {
            throw RecordParseError("record file line " + std::to_string(lineno) +
                                       ": expected `t E1 E2 E3 E4 E5 E6 shots`",
                                   lineno);
        }
        std::string trailing;
        if (rs >> trailing) {
            throw RecordParseError("record file line " + std::to_string(lineno) +
                                       ": unexpected trailing field",
                                   lineno);
        }
        file.records.emplace_back(t, rec);
    }
    if (!have_l0 || !have_l1 || !have_pe) {
        throw RecordParseError("record file: missing l0/l1/pe calibration header", lineno);
    }
    file.calibration.validate();
    return file;
}

} // namespace hsesim
