// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include "hsesim/rng.hpp"

namespace hsesim {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Dimensionless Bloch vector. Length 1 for pure states, < 1 for mixed.
struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double length() const;
};

/// Normalized qubit state (|0>, |1> amplitudes). Global phase carries no
/// meaning; comparisons must go through |<psi|chi>|.
struct Spinor {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};

    double norm() const;
    Spinor normalized() const;
};

/// <psi|chi>
cplx overlap(const Spinor& psi, const Spinor& chi);

/// Phase-insensitive distance 1 - |<psi|chi>|, zero iff equal up to phase.
double state_distance(const Spinor& psi, const Spinor& chi);

/// (cos(theta/2), e^{i phi} sin(theta/2)) for polar/azimuthal angles.
Spinor bloch_to_spinor(double theta, double phi);

/// r = <psi|sigma|psi>; invariant under global phase.
BlochVector spinor_to_bloch(const Spinor& psi);

/// 2x2 unitary, row-major storage.
///
/// Rotation convention: exp(-i theta n.sigma), no half angle in the
/// exponent; such a kick turns the Bloch vector by 2*theta about n.
class Unitary2 {
public:
    Unitary2() : m_{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}} {}
    Unitary2(cplx m00, cplx m01, cplx m10, cplx m11) : m_{m00, m01, m10, m11} {}

    static Unitary2 identity() { return Unitary2{}; }

    /// exp(-i angle axis.sigma). Throws if |axis| deviates from 1 by > 1e-9.
    static Unitary2 rotation(const std::array<double, 3>& axis, double angle);

    /// exp(-i g.sigma); identity for |g| < 1e-14.
    static Unitary2 exp_kick(const std::array<double, 3>& g);

    cplx at(int row, int col) const { return m_[2 * row + col]; }
    cplx& at(int row, int col) { return m_[2 * row + col]; }

    Unitary2 dagger() const;

    /// max entry of |U U^dag - I|.
    double unitarity_error() const;

    /// One Newton-Schulz polar step U <- (3U - U U^dag U)/2; pulls a slightly
    /// drifted product back onto the unitary group.
    Unitary2 reunitarized() const;

private:
    std::array<cplx, 4> m_;
};

/// second * first (apply `first`, then `second`).
Unitary2 compose(const Unitary2& second, const Unitary2& first);

Spinor apply(const Unitary2& u, const Spinor& psi);

/// Running product of kicks V_t ... V_1 with periodic re-unitarization
/// (every 10^4 factors), safe for ~10^6-step products.
class UnitaryProduct {
public:
    UnitaryProduct() = default;

    /// product <- next * product
    void push(const Unitary2& next);

    const Unitary2& value() const { return product_; }

private:
    static constexpr std::uint64_t kReunitarizeEvery = 10000;
    Unitary2 product_{};
    std::uint64_t count_ = 0;
};

/// Hermitian trace-one 2x2 matrix, row-major storage.
class DensityMatrix2 {
public:
    DensityMatrix2(); // I/2

    static DensityMatrix2 maximally_mixed();
    static DensityMatrix2 from_bloch(const BlochVector& r); // throws if |r| > 1 + 1e-9
    static DensityMatrix2 from_entries(cplx m00, cplx m01, cplx m10, cplx m11);

    cplx at(int row, int col) const { return m_[2 * row + col]; }
    BlochVector bloch() const;

private:
    std::array<cplx, 4> m_;
};

/// |psi><psi|
DensityMatrix2 density(const Spinor& psi);

/// U rho U^dag
DensityMatrix2 conjugate_channel(const Unitary2& u, const DensityMatrix2& rho);

/// Half the trace norm of a - b; for qubits this is |r_a - r_b|/2.
double trace_distance(const DensityMatrix2& a, const DensityMatrix2& b);

/// theta = arccos(1 - 2u), phi = 2 pi v; uniform on the sphere for uniform
/// (u, v) in [0,1)^2.
Spinor spinor_from_uniforms(double u, double v);

Spinor haar_random_spinor(Rng& rng);

} // namespace hsesim
