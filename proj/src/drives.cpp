// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "hsesim/drives.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hsesim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBoundarySnap = 1e-12;

// Phase omega2*t reduced to [0, 2pi), snapped onto the nearest arc start
// when within 1e-12 so that membership in half-open arcs is deterministic.
double snapped_phase(double omega2, std::uint64_t t,
                     const std::vector<double>& starts) {
    double phi = std::fmod(omega2 * static_cast<double>(t), kTwoPi);
    if (phi < 0.0) {
        phi += kTwoPi;
    }
    if (kTwoPi - phi <= kBoundarySnap) {
        phi = 0.0;
    }
    for (double s : starts) {
        if (std::fabs(phi - s) <= kBoundarySnap) {
            phi = s;
            break;
        }
    }
    return phi;
}

Spinor fix_phase(const Spinor& psi) {
    if (std::abs(psi.a) > 1e-12) {
        const cplx ph = std::conj(psi.a) / std::abs(psi.a);
        return Spinor{std::abs(psi.a), psi.b * ph};
    }
    return Spinor{0.0, std::abs(psi.b)};
}

} // namespace

DriveProtocol DriveProtocol::floquet(double theta_x, double theta_y) {
    DriveProtocol p;
    p.kind_ = DriveKind::floquet;
    p.theta_x_ = theta_x;
    p.theta_y_ = theta_y;
    p.omega2_ = kPi;
    return p;
}

DriveProtocol DriveProtocol::smooth_qp() {
    DriveProtocol p;
    p.kind_ = DriveKind::smooth_qp;
    p.theta_x_ = 1.0; // fixed by the drive definition
    p.omega2_ = golden_ratio;
    return p;
}

DriveProtocol DriveProtocol::fibonacci(double theta_x, double theta_z) {
    DriveProtocol p;
    p.kind_ = DriveKind::fibonacci;
    p.theta_x_ = theta_x;
    p.theta_z_ = theta_z;
    p.omega2_ = kPi * (3.0 - std::sqrt(5.0));
    return p;
}

DriveProtocol DriveProtocol::custom_piecewise(double omega2,
                                              std::vector<KickArc> arcs) {
    if (!(omega2 > 0.0) || !std::isfinite(omega2)) {
        throw std::invalid_argument("custom_piecewise: omega2 must be positive and finite");
    }
    if (arcs.empty()) {
        throw std::invalid_argument("custom_piecewise: at least one arc required");
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const KickArc& a, const KickArc& b) { return a.begin < b.begin; });
    const double tol = 1e-9;
    if (std::fabs(arcs.front().begin) > tol) {
        throw std::invalid_argument("custom_piecewise: arcs must start at 0");
    }
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (!(arcs[i].end > arcs[i].begin)) {
            throw std::invalid_argument("custom_piecewise: arc has non-positive length");
        }
        const double next = (i + 1 < arcs.size()) ? arcs[i + 1].begin : kTwoPi;
        if (std::fabs(arcs[i].end - next) > tol) {
            throw std::invalid_argument("custom_piecewise: arcs must partition [0, 2pi) "
                                        "without gaps or overlap");
        }
    }
    DriveProtocol p;
    p.kind_ = DriveKind::custom_piecewise;
    p.omega2_ = omega2;
    p.arcs_ = std::move(arcs);
    return p;
}

std::string DriveProtocol::describe() const {
    char buf[160];
    switch (kind_) {
    case DriveKind::floquet:
        std::snprintf(buf, sizeof buf, "floquet theta_x=%.17g theta_y=%.17g",
                      theta_x_, theta_y_);
        break;
    case DriveKind::smooth_qp:
        std::snprintf(buf, sizeof buf, "smoothqp");
        break;
    case DriveKind::fibonacci:
        std::snprintf(buf, sizeof buf, "fibonacci theta_x=%.17g theta_z=%.17g",
                      theta_x_, theta_z_);
        break;
    case DriveKind::custom_piecewise:
        std::snprintf(buf, sizeof buf, "custom omega2=%.17g arcs=%zu", omega2_,
                      arcs_.size());
        break;
    }
    return buf;
}

std::vector<std::uint8_t> fibonacci_word_substitution(std::size_t length) {
    if (length == 0) {
        throw std::invalid_argument("fibonacci_word_substitution: length must be >= 1");
    }
    std::vector<std::uint8_t> word{0};  // W(1)
    std::vector<std::uint8_t> prev{1};  // W(0)
    while (word.size() < length) {
        std::vector<std::uint8_t> next = word;
        next.insert(next.end(), prev.begin(), prev.end());
        prev = std::move(word);
        word = std::move(next);
    }
    word.resize(length);
    return word;
}

std::vector<std::uint8_t> fibonacci_word_circle(std::size_t length) {
    if (length == 0) {
        throw std::invalid_argument("fibonacci_word_circle: length must be >= 1");
    }
    const double omega2 = kPi * (3.0 - std::sqrt(5.0));
    const double arc_end = kTwoPi - omega2;
    const std::vector<double> starts{0.0, arc_end};
    std::vector<std::uint8_t> word(length);
    for (std::size_t t = 1; t <= length; ++t) {
        const double phi = snapped_phase(omega2, t, starts);
        word[t - 1] = (phi < arc_end) ? 0 : 1;
    }
    return word;
}

std::array<double, 3> smooth_g(double phi) {
    const double omega2 = DriveProtocol::golden_ratio;
    const double c = std::acos(std::cos(omega2) * std::cos(1.0));
    const double pref = c / std::sin(c);
    return {pref * std::sin(1.0) * std::cos(2.0 * phi - omega2),
            pref * std::sin(1.0) * std::sin(2.0 * phi - omega2),
            pref * std::cos(1.0) * std::sin(omega2)};
}

KickGenerator::KickGenerator(const DriveProtocol& protocol)
    : kind_(protocol.kind()), omega2_(protocol.omega2()) {
    switch (kind_) {
    case DriveKind::floquet:
        // phase pi*t mod 2pi is exactly pi (odd t) or 0 (even t); keep the
        // two kicks and pick by parity.
        arc_kicks_ = {Unitary2::rotation({1, 0, 0}, protocol.theta_x()),
                      Unitary2::rotation({0, 1, 0}, protocol.theta_y())};
        break;
    case DriveKind::fibonacci:
        boundaries_ = {0.0, kTwoPi - omega2_};
        arc_kicks_ = {Unitary2::rotation({1, 0, 0}, protocol.theta_x()),
                      Unitary2::rotation({0, 0, 1}, protocol.theta_z())};
        break;
    case DriveKind::custom_piecewise:
        for (const KickArc& arc : protocol.arcs()) {
            boundaries_.push_back(arc.begin);
            arc_kicks_.push_back(Unitary2::exp_kick(arc.kick));
        }
        boundaries_.front() = 0.0;
        break;
    case DriveKind::smooth_qp:
        break;
    }
}

Unitary2 KickGenerator::operator()(std::uint64_t t) const {
    if (t == 0) {
        throw std::invalid_argument("kick_at: kicks start at t = 1");
    }
    switch (kind_) {
    case DriveKind::floquet:
        return arc_kicks_[(t % 2 == 1) ? 0 : 1];
    case DriveKind::smooth_qp:
        return Unitary2::exp_kick(smooth_g(omega2_ * static_cast<double>(t)));
    case DriveKind::fibonacci: {
        const double phi = snapped_phase(omega2_, t, boundaries_);
        return arc_kicks_[(phi < boundaries_[1]) ? 0 : 1];
    }
    case DriveKind::custom_piecewise: {
        const double phi = snapped_phase(omega2_, t, boundaries_);
        // last arc whose start is <= phi
        auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), phi);
        return arc_kicks_[static_cast<std::size_t>(it - boundaries_.begin()) - 1];
    }
    }
    throw std::logic_error("kick_at: unknown drive kind");
}

Unitary2 kick_at(const DriveProtocol& protocol, std::uint64_t t) {
    return KickGenerator(protocol)(t);
}

Trajectory evolve(const DriveProtocol& protocol, const Spinor& psi0,
                  std::uint64_t steps) {
    if (steps == 0) {
        throw std::invalid_argument("evolve: steps must be >= 1");
    }
    if (std::fabs(psi0.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("evolve: initial state must be normalized");
    }
    const KickGenerator kick(protocol);
    Trajectory traj;
    traj.initial = psi0;
    traj.states.reserve(steps);
    traj.states.push_back(psi0);
    Spinor psi = psi0;
    for (std::uint64_t t = 1; t < steps; ++t) {
        psi = apply(kick(t), psi).normalized();
        traj.states.push_back(psi);
    }
    return traj;
}

std::pair<Spinor, Spinor> floquet_eigenstates(double theta_x, double theta_y) {
    const Unitary2 uf = compose(Unitary2::rotation({0, 1, 0}, theta_y),
                                Unitary2::rotation({1, 0, 0}, theta_x));
    // U_F = cos(a) I - i sin(a) n.sigma; (i/2)(U - U^dag) = sin(a) n.sigma
    const cplx h01 = cplx{0.0, 0.5} * (uf.at(0, 1) - std::conj(uf.at(1, 0)));
    const double hx = h01.real();
    const double hy = -h01.imag();
    const double hz = -uf.at(0, 0).imag();
    const double len = std::sqrt(hx * hx + hy * hy + hz * hz);
    if (len < 1e-12) {
        throw std::invalid_argument("floquet_eigenstates: U_F is proportional to the "
                                    "identity; eigenbasis undefined");
    }
    const double theta = std::acos(std::clamp(hz / len, -1.0, 1.0));
    const double phi = std::atan2(hy, hx);
    return {fix_phase(bloch_to_spinor(theta, phi)),
            fix_phase(bloch_to_spinor(kPi - theta, phi + kPi))};
}

} // namespace hsesim
