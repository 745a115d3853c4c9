// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hsesim/drives.hpp"
#include "oracles.hpp"

using namespace hsesim;

namespace {

constexpr double kPi = 3.14159265358979323846;

double unitary_distance(const Unitary2& a, const Unitary2& b) {
    double d = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            d = std::max(d, std::abs(a.at(r, c) - b.at(r, c)));
        }
    }
    return d;
}

} // namespace

TEST_CASE("fibonacci word by substitution") {
    const std::vector<std::uint8_t> w8 = fibonacci_word_substitution(8);
    CHECK(w8 == std::vector<std::uint8_t>{0, 1, 0, 0, 1, 0, 1, 0});
    CHECK(fibonacci_word_substitution(2) == std::vector<std::uint8_t>{0, 1});

    const std::vector<std::uint8_t> w = fibonacci_word_substitution(987);
    int zeros = 0;
    for (std::uint8_t c : w) {
        zeros += (c == 0);
    }
    CHECK(zeros == 610);

    CHECK_THROWS_AS(fibonacci_word_substitution(0), std::invalid_argument);
}

TEST_CASE("fibonacci word by circle rotation") {
    const std::vector<std::uint8_t> w5 = fibonacci_word_circle(5);
    CHECK(w5 == std::vector<std::uint8_t>{0, 1, 0, 0, 1});

    // frequency of 0s approaches the inverse golden ratio
    const std::size_t n = 100000;
    const std::vector<std::uint8_t> w = fibonacci_word_circle(n);
    std::size_t zeros = 0;
    for (std::uint8_t c : w) {
        zeros += (c == 0);
    }
    const double frac = static_cast<double>(zeros) / static_cast<double>(n);
    CHECK(std::fabs(frac - (std::sqrt(5.0) - 1.0) / 2.0) < 1e-4);
}

TEST_CASE("circle and substitution generators agree character by character") {
    const std::size_t n = 100000;
    const std::vector<std::uint8_t> circle = fibonacci_word_circle(n);
    const std::vector<std::uint8_t> subst = fibonacci_word_substitution(n);
    std::size_t mismatch = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (circle[i] != subst[i]) {
            mismatch = i;
            break;
        }
    }
    CHECK_MESSAGE(mismatch == n, "first mismatch at index ", mismatch);
}

TEST_CASE("smooth_g has constant length c = arccos(cos omega2 cos 1)") {
    const double omega2 = DriveProtocol::golden_ratio;
    const double c = std::acos(std::cos(omega2) * std::cos(1.0));
    for (double phi : {0.0, 0.3, 1.0, 2.71, 5.9, 12.4}) {
        const std::array<double, 3> g = smooth_g(phi);
        const double len = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
        CHECK(len == doctest::Approx(c).epsilon(1e-13));
    }
    // z component at phi = omega2 reads straight off the formula
    const std::array<double, 3> g1 = smooth_g(omega2);
    CHECK(g1[2] == doctest::Approx((c / std::sin(c)) * std::cos(1.0) *
                                   std::sin(omega2)));
}

TEST_CASE("smooth kick equals U_z^t U_x U_z^{-(t-1)}") {
    const double omega2 = DriveProtocol::golden_ratio;
    const Unitary2 uz = Unitary2::rotation({0, 0, 1}, omega2);
    const Unitary2 ux = Unitary2::rotation({1, 0, 0}, 1.0);
    Unitary2 uz_pow_t = uz;                    // U_z^t
    Unitary2 uz_pow_mt = Unitary2::identity(); // U_z^{-(t-1)}
    const Unitary2 uz_dag = uz.dagger();
    for (std::uint64_t t = 1; t <= 100; ++t) {
        const Unitary2 want = compose(uz_pow_t, compose(ux, uz_pow_mt));
        const Unitary2 got = Unitary2::exp_kick(smooth_g(omega2 * static_cast<double>(t)));
        CHECK(unitary_distance(got, want) < 1e-10);
        uz_pow_t = compose(uz, uz_pow_t);
        uz_pow_mt = compose(uz_dag, uz_pow_mt);
    }
}

TEST_CASE("kick_at: floquet alternates U_x, U_y starting with U_x") {
    const DriveProtocol p = DriveProtocol::floquet(kPi / 8, kPi / 8);
    const Unitary2 ux = Unitary2::rotation({1, 0, 0}, kPi / 8);
    const Unitary2 uy = Unitary2::rotation({0, 1, 0}, kPi / 8);
    CHECK(unitary_distance(kick_at(p, 1), ux) == 0.0);
    CHECK(unitary_distance(kick_at(p, 2), uy) == 0.0);
    // exact periodicity
    for (std::uint64_t t = 1; t <= 6; ++t) {
        CHECK(unitary_distance(kick_at(p, t), kick_at(p, t + 2)) == 0.0);
    }
    CHECK_THROWS_AS(kick_at(p, 0), std::invalid_argument);
}

TEST_CASE("kick_at: fibonacci follows the word with U_x for 0 and U_z for 1") {
    const DriveProtocol p = DriveProtocol::fibonacci(0.38 * kPi, 0.22 * kPi);
    const Unitary2 ux = Unitary2::rotation({1, 0, 0}, 0.38 * kPi);
    const Unitary2 uz = Unitary2::rotation({0, 0, 1}, 0.22 * kPi);
    const std::vector<std::uint8_t> expect{0, 1, 0, 0, 1, 0, 1, 0};
    for (std::uint64_t t = 1; t <= 8; ++t) {
        const Unitary2 want = expect[t - 1] == 0 ? ux : uz;
        CHECK(unitary_distance(kick_at(p, t), want) == 0.0);
    }
}

TEST_CASE("kick_at: smooth drive first kick is U_z U_x") {
    const DriveProtocol p = DriveProtocol::smooth_qp();
    const Unitary2 want = compose(Unitary2::rotation({0, 0, 1}, p.omega2()),
                                  Unitary2::rotation({1, 0, 0}, 1.0));
    CHECK(unitary_distance(kick_at(p, 1), want) < 1e-10);
}

TEST_CASE("custom piecewise arcs reproduce the fibonacci drive") {
    const double omega2 = kPi * (3.0 - std::sqrt(5.0));
    const double tx = 0.38 * kPi;
    const double tz = 0.22 * kPi;
    const DriveProtocol custom = DriveProtocol::custom_piecewise(
        omega2, {KickArc{0.0, kTwoPi - omega2, {tx, 0.0, 0.0}},
                 KickArc{kTwoPi - omega2, kTwoPi, {0.0, 0.0, tz}}});
    const DriveProtocol fib = DriveProtocol::fibonacci(tx, tz);
    for (std::uint64_t t = 1; t <= 200; ++t) {
        CHECK(unitary_distance(kick_at(custom, t), kick_at(fib, t)) < 1e-15);
    }
}

TEST_CASE("custom piecewise validation") {
    CHECK_THROWS_AS(DriveProtocol::custom_piecewise(1.0, {}), std::invalid_argument);
    // gap between arcs
    CHECK_THROWS_AS(DriveProtocol::custom_piecewise(
                        1.0, {KickArc{0.0, 1.0, {1, 0, 0}},
                              KickArc{2.0, kTwoPi, {0, 0, 1}}}),
                    std::invalid_argument);
    // does not reach 2 pi
    CHECK_THROWS_AS(DriveProtocol::custom_piecewise(
                        1.0, {KickArc{0.0, 3.0, {1, 0, 0}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(DriveProtocol::custom_piecewise(0.0, {KickArc{0.0, kTwoPi, {1, 0, 0}}}),
                    std::invalid_argument);
}

TEST_CASE("evolve: basic contracts") {
    const DriveProtocol p = DriveProtocol::fibonacci(0.38 * kPi, 0.22 * kPi);
    const Spinor psi0 = bloch_to_spinor(0.4, 1.3);
    const Trajectory one = evolve(p, psi0, 1);
    REQUIRE(one.states.size() == 1);
    CHECK(std::abs(one.states[0].a - psi0.a) == 0.0);

    // determinism: identical inputs give bit-identical trajectories
    const Trajectory t1 = evolve(p, psi0, 400);
    const Trajectory t2 = evolve(p, psi0, 400);
    for (std::size_t i = 0; i < t1.states.size(); ++i) {
        CHECK(t1.states[i].a == t2.states[i].a);
        CHECK(t1.states[i].b == t2.states[i].b);
    }

    CHECK_THROWS_AS(evolve(p, psi0, 0), std::invalid_argument);
    CHECK_THROWS_AS(evolve(p, Spinor{0.5, 0.0}, 3), std::invalid_argument);
}

TEST_CASE("evolve: smooth drive matches the closed-form propagator to 1e-9") {
    const DriveProtocol p = DriveProtocol::smooth_qp();
    const Spinor psi0 = bloch_to_spinor(0.3, 0.7);
    const Trajectory traj = evolve(p, psi0, 10001);
    double worst = 0.0;
    for (std::uint64_t t = 0; t <= 10000; t += 97) {
        const Spinor want = apply(oracle::smooth_qp_closed_form(t), psi0);
        worst = std::max(worst, state_distance(want, traj.states[t]));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("evolve: floquet eigenstate returns to itself every two steps") {
    const double tx = kPi / 8;
    const double ty = kPi / 8;
    const auto [psi, psi2] = floquet_eigenstates(tx, ty);
    const Trajectory traj = evolve(DriveProtocol::floquet(tx, ty), psi, 40);
    for (std::size_t t = 0; t < traj.states.size(); t += 2) {
        CHECK(state_distance(traj.states[t], psi) < 1e-12);
    }
    (void)psi2;
}

TEST_CASE("floquet_eigenstates: eigenvector residual, orthogonality, order") {
    const double tx = kPi / 8;
    const double ty = kPi / 8;
    const auto [a, b] = floquet_eigenstates(tx, ty);
    const Unitary2 uf = compose(Unitary2::rotation({0, 1, 0}, ty),
                                Unitary2::rotation({1, 0, 0}, tx));
    CHECK(std::abs(overlap(a, apply(uf, a))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(overlap(b, apply(uf, b))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(overlap(a, b)) < 1e-12);
    // phase fixing: leading amplitude real positive
    CHECK(a.a.imag() == 0.0);
    CHECK(a.a.real() > 0.0);
}

TEST_CASE("floquet_eigenstates: theta_y = 0 gives the sigma_x eigenstates") {
    const auto [a, b] = floquet_eigenstates(kPi / 8, 0.0);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(state_distance(a, Spinor{s, s}) < 1e-12);
    CHECK(state_distance(b, Spinor{s, -s}) < 1e-12);
}

TEST_CASE("floquet_eigenstates: degenerate U_F is rejected") {
    CHECK_THROWS_AS(floquet_eigenstates(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(floquet_eigenstates(kPi, 0.0), std::invalid_argument);
}
