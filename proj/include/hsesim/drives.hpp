// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hsesim/su2.hpp"

namespace hsesim {

enum class DriveKind {
    floquet,          // omega2 = pi, alternating y/x kicks
    smooth_qp,        // omega2 = golden ratio, smoothly modulated kick axis
    fibonacci,        // omega2 = pi(3 - sqrt 5), x/z kicks from the Fibonacci word
    custom_piecewise, // user-supplied arcs on the circle
};

/// One arc [begin, end) of the kick-modulation circle with its kick vector.
struct KickArc {
    double begin = 0.0;
    double end = 0.0;
    std::array<double, 3> kick{0.0, 0.0, 0.0};
};

/// A fully specified kick drive: kind, angles and the second frequency.
/// Immutable after construction; all angles in radians, omega2 in radians
/// per step.
class DriveProtocol {
public:
    static DriveProtocol floquet(double theta_x, double theta_y);
    static DriveProtocol smooth_qp();
    static DriveProtocol fibonacci(double theta_x, double theta_z);

    /// Arcs must partition [0, 2 pi) without overlap (checked to 1e-9).
    static DriveProtocol custom_piecewise(double omega2, std::vector<KickArc> arcs);

    DriveKind kind() const { return kind_; }
    double theta_x() const { return theta_x_; }
    double theta_y() const { return theta_y_; }
    double theta_z() const { return theta_z_; }
    double omega2() const { return omega2_; }
    const std::vector<KickArc>& arcs() const { return arcs_; }

    std::string describe() const;

    static constexpr double golden_ratio = 1.6180339887498948482;

private:
    DriveProtocol() = default;

    DriveKind kind_ = DriveKind::floquet;
    double theta_x_ = 0.0;
    double theta_y_ = 0.0;
    double theta_z_ = 0.0;
    double omega2_ = 0.0;
    std::vector<KickArc> arcs_;
};

/// First `length` characters of the infinite Fibonacci word, built by the
/// concatenation rule W(k+1) = W(k) W(k-1) with W(0) = 1, W(1) = 0.
std::vector<std::uint8_t> fibonacci_word_substitution(std::size_t length);

/// Same word from the circle rotation: character at step t is 0 when
/// omega2*t mod 2pi falls in [0, 2pi - omega2), with omega2 = pi(3 - sqrt 5).
std::vector<std::uint8_t> fibonacci_word_circle(std::size_t length);

/// Kick modulation vector of the smooth quasiperiodic drive; |g| equals
/// c = arccos(cos(omega2) cos 1) for every phi.
std::array<double, 3> smooth_g(double phi);

/// Caches per-protocol constants so that per-step kick lookup is cheap.
class KickGenerator {
public:
    explicit KickGenerator(const DriveProtocol& protocol);

    /// Kick V_t; t starts at 1 (throws for t = 0).
    Unitary2 operator()(std::uint64_t t) const;

private:
    DriveKind kind_;
    double omega2_ = 0.0;
    std::vector<double> boundaries_;  // arc upper ends, ascending
    std::vector<Unitary2> arc_kicks_; // fixed kick per arc (not smooth_qp)
};

Unitary2 kick_at(const DriveProtocol& protocol, std::uint64_t t);

struct Trajectory {
    Spinor initial;
    std::vector<Spinor> states; // t = 0 .. steps-1
};

/// States visited at t = 0..steps-1; state t applies kicks 1..t to psi0.
Trajectory evolve(const DriveProtocol& protocol, const Spinor& psi0,
                  std::uint64_t steps);

/// Eigenstates of U_F = U_y U_x (quasienergy states of the Floquet drive),
/// phase-fixed so the first nonzero amplitude is real positive; the first
/// state lies along the +axis of U_F's rotation. Throws when U_F is
/// proportional to the identity.
std::pair<Spinor, Spinor> floquet_eigenstates(double theta_x, double theta_y);

} // namespace hsesim
