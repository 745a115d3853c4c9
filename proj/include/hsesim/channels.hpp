// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hsesim/drives.hpp"
#include "hsesim/su2.hpp"

namespace hsesim {

/// Finite-time averaging channel (1/T) sum_{t=0}^{T-1} U(t) rho U(t)^dag,
/// with U(0) = I. Trace- and positivity-preserving.
DensityMatrix2 time_avg_channel(const DriveProtocol& protocol,
                                const DensityMatrix2& rho, std::uint64_t steps);

enum class PauliAxis { x, y, z };

/// Maximal dephasing about the given axis: the Bloch vector is projected
/// onto that axis. Composing two different axes depolarizes completely.
DensityMatrix2 dephasing_channel(PauliAxis axis, const DensityMatrix2& rho);

struct ChannelReport {
    std::uint64_t steps = 0;
    std::uint32_t trial = 0;
    BlochVector input;
    double residual = 0.0; // trace distance of channel output from I/2
};

/// Residuals of the time-averaging channel against the maximally mixed
/// state for `trials` Haar-random pure inputs at each requested T.
/// Reports sorted by (steps, trial); deterministic given the seed.
std::vector<ChannelReport> depolarization_residual(
    const DriveProtocol& protocol, std::vector<std::uint64_t> t_list,
    std::uint32_t trials, std::uint64_t seed);

struct PowerLawFit {
    double amplitude = 0.0;
    double exponent = 0.0; // y ~ amplitude * T^{-exponent}
};

/// Log-log least squares; points with y <= 0 are skipped. Throws when
/// fewer than two usable points remain.
PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y);

} // namespace hsesim
