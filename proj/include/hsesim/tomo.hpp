// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsesim/rng.hpp"
#include "hsesim/su2.hpp"

namespace hsesim {

/// Readout calibration: photoluminescence rates of |0> and |1> (counts per
/// shot) and the preparation polarization efficiency.
struct TomoCalibration {
    double l0 = 1.0;
    double l1 = 0.7;
    double pe = 0.92;

    double l01() const { return l0 - l1; }

    /// Requires l0 > l1 > 0 and 0 < pe <= 1.
    void validate() const;
};

/// Six measured PL expectations (counts per shot). shots = 0 marks an exact,
/// noiseless record.
struct TomoRecord {
    std::array<double, 6> e{};
    std::uint64_t shots = 0;
};

/// Linear-inversion output. p0 + p1 = 1 by construction; under shot noise
/// the coherences may violate alpha^2 + beta^2 <= p0 p1, which is kept as-is
/// until purification.
struct ReconstructedState {
    double p0 = 1.0;
    double p1 = 0.0;
    double alpha = 0.0; // Re <0|rho|1>
    double beta = 0.0;  // Im <0|rho|1>

    BlochVector bloch() const { return {2.0 * alpha, -2.0 * beta, p0 - p1}; }

    static ReconstructedState from_bloch(const BlochVector& r) {
        return ReconstructedState{(1.0 + r.z) / 2.0, (1.0 - r.z) / 2.0,
                                  r.x / 2.0, -r.y / 2.0};
    }
};

/// Noiseless expectations of the six tomography sequences for rho.
TomoRecord pl_expectations(const DensityMatrix2& rho, const TomoCalibration& cal);

/// Each E_i replaced by Poisson(shots * E_i)/shots.
TomoRecord add_shot_noise(const TomoRecord& record, std::uint64_t shots, Rng& rng);

/// Exact inverse of the forward map: p0 = 1/2 + (E1-E2)/(2 L01),
/// alpha = (E6-E5)/(2 L01), beta = (E4-E3)/(2 L01).
ReconstructedState reconstruct(const TomoRecord& record, const TomoCalibration& cal);

/// Imperfect preparation: Bloch vector shrunk by pe towards I/2.
DensityMatrix2 depolarize(const DensityMatrix2& rho, double pe);

/// Undo `depolarize`: Bloch vector scaled by 1/pe. Throws for pe <= 0.
ReconstructedState polarization_correct(const ReconstructedState& state, double pe);

struct Purified {
    Spinor state;
    double bloch_norm = 0.0; // pre-clip norm, for diagnostics
};

/// Nearest pure state: Bloch direction kept, length clipped to 1. Throws
/// when the Bloch norm is <= 1e-9 (direction undefined).
Purified purify(const ReconstructedState& state);

/// Parse failure in a record file; line is 1-based.
class RecordParseError : public std::runtime_error {
public:
    RecordParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

struct RecordFile {
    TomoCalibration calibration;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::uint64_t, TomoRecord>> records; // (t, record)
};

/// Line-oriented text format: `# key = value` headers carrying l0, l1, pe
/// and seed, then one `t E1..E6 shots` row per record, 17 significant
/// digits. Round-trips bit-exactly.
void write_record_file(std::ostream& out, const RecordFile& file);
RecordFile read_record_file(std::istream& in);

} // namespace hsesim
