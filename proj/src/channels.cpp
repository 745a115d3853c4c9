// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "hsesim/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsesim/rng.hpp"

namespace hsesim {

DensityMatrix2 time_avg_channel(const DriveProtocol& protocol,
                                const DensityMatrix2& rho, std::uint64_t steps) {
    if (steps == 0) {
        throw std::invalid_argument("time_avg_channel: steps must be >= 1");
    }
    const KickGenerator kick(protocol);
    UnitaryProduct u; // U(0) = I
    cplx sum00{0, 0};
    cplx sum01{0, 0};
    cplx comp00{0, 0};
    cplx comp01{0, 0};
    auto add = [](cplx& sum, cplx& comp, cplx term) {
        const cplx y = term - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    for (std::uint64_t t = 0; t < steps; ++t) {
        if (t > 0) {
            u.push(kick(t));
        }
        const DensityMatrix2 conj = conjugate_channel(u.value(), rho);
        add(sum00, comp00, conj.at(0, 0));
        add(sum01, comp01, conj.at(0, 1));
    }
    const double inv = 1.0 / static_cast<double>(steps);
    const cplx m00 = sum00 * inv;
    const cplx m01 = sum01 * inv;
    return DensityMatrix2::from_entries(m00.real(), m01, std::conj(m01),
                                        1.0 - m00.real());
}

DensityMatrix2 dephasing_channel(PauliAxis axis, const DensityMatrix2& rho) {
    BlochVector r = rho.bloch();
    switch (axis) {
    case PauliAxis::x:
        r.y = 0.0;
        r.z = 0.0;
        break;
    case PauliAxis::y:
        r.x = 0.0;
        r.z = 0.0;
        break;
    case PauliAxis::z:
        r.x = 0.0;
        r.y = 0.0;
        break;
    }
    return DensityMatrix2::from_bloch(r);
}

std::vector<ChannelReport> depolarization_residual(
    const DriveProtocol& protocol, std::vector<std::uint64_t> t_list,
    std::uint32_t trials, std::uint64_t seed) {
    if (trials == 0) {
        throw std::invalid_argument("depolarization_residual: trials must be >= 1");
    }
    if (t_list.empty()) {
        throw std::invalid_argument("depolarization_residual: empty T list");
    }
    std::sort(t_list.begin(), t_list.end());
    t_list.erase(std::unique(t_list.begin(), t_list.end()), t_list.end());
    if (t_list.front() < 1) {
        throw std::invalid_argument("depolarization_residual: T values start at 1");
    }

    const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
    std::vector<ChannelReport> reports;
    reports.reserve(t_list.size() * trials);
    for (std::uint32_t trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::substream(seed, trial);
        const Spinor psi = haar_random_spinor(rng);
        const DensityMatrix2 rho = density(psi);
        for (std::uint64_t t : t_list) {
            const DensityMatrix2 averaged = time_avg_channel(protocol, rho, t);
            reports.push_back(ChannelReport{t, trial, spinor_to_bloch(psi),
                                            trace_distance(averaged, mixed)});
        }
    }
    std::sort(reports.begin(), reports.end(),
              [](const ChannelReport& a, const ChannelReport& b) {
                  return a.steps != b.steps ? a.steps < b.steps : a.trial < b.trial;
              });
    return reports;
}

PowerLawFit fit_power_law(std::span<const double> t, std::span<const double> y) {
    if (t.size() != y.size()) {
        throw std::invalid_argument("fit_power_law: length mismatch");
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(t[i] > 0.0) || !(y[i] > 0.0)) {
            continue;
        }
        const double lx = std::log(t[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) {
        throw std::invalid_argument("fit_power_law: need at least two positive points");
    }
    const double denom = n * sxx - sx * sx;
    if (std::fabs(denom) < 1e-12) {
        throw std::invalid_argument("fit_power_law: degenerate abscissae");
    }
    const double slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - slope * sx) / n;
    return PowerLawFit{std::exp(intercept), -slope};
}

} // namespace hsesim
