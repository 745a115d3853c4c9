// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "hsesim/su2.hpp"

#include <cmath>
#include <stdexcept>

namespace hsesim {

namespace {
const cplx kI{0.0, 1.0};
}

double BlochVector::length() const {
    return std::sqrt(x * x + y * y + z * z);
}

double Spinor::norm() const {
    return std::sqrt(std::norm(a) + std::norm(b));
}

Spinor Spinor::normalized() const {
    const double n = norm();
    if (n <= 0.0) {
        throw std::invalid_argument("Spinor::normalized: zero vector");
    }
    return Spinor{a / n, b / n};
}

cplx overlap(const Spinor& psi, const Spinor& chi) {
    return std::conj(psi.a) * chi.a + std::conj(psi.b) * chi.b;
}

double state_distance(const Spinor& psi, const Spinor& chi) {
    return 1.0 - std::abs(overlap(psi, chi));
}

Spinor bloch_to_spinor(double theta, double phi) {
    return Spinor{std::cos(theta / 2.0),
                  std::polar(std::sin(theta / 2.0), phi)};
}

BlochVector spinor_to_bloch(const Spinor& psi) {
    const cplx ab = std::conj(psi.a) * psi.b;
    return BlochVector{2.0 * ab.real(), 2.0 * ab.imag(),
                       std::norm(psi.a) - std::norm(psi.b)};
}

Unitary2 Unitary2::rotation(const std::array<double, 3>& axis, double angle) {
    const double len =
        std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::fabs(len - 1.0) > 1e-9) {
        throw std::invalid_argument("Unitary2::rotation: axis must be unit length");
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    // cos(angle) I - i sin(angle) (n . sigma)
    return Unitary2{cplx{c, -s * axis[2]},
                    cplx{-s * axis[1], -s * axis[0]},
                    cplx{s * axis[1], -s * axis[0]},
                    cplx{c, s * axis[2]}};
}

Unitary2 Unitary2::exp_kick(const std::array<double, 3>& g) {
    const double len = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
    if (len < 1e-14) {
        return identity();
    }
    return rotation({g[0] / len, g[1] / len, g[2] / len}, len);
}

Unitary2 Unitary2::dagger() const {
    return Unitary2{std::conj(m_[0]), std::conj(m_[2]),
                    std::conj(m_[1]), std::conj(m_[3])};
}

double Unitary2::unitarity_error() const {
    const Unitary2 p = compose(*this, dagger());
    double err = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            const cplx want = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            err = std::max(err, std::abs(p.at(r, c) - want));
        }
    }
    return err;
}

Unitary2 Unitary2::reunitarized() const {
    const Unitary2& u = *this;
    const Unitary2 uuu = compose(compose(u, u.dagger()), u);
    Unitary2 out;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.at(r, c) = 1.5 * u.at(r, c) - 0.5 * uuu.at(r, c);
        }
    }
    return out;
}

Unitary2 compose(const Unitary2& second, const Unitary2& first) {
    Unitary2 out{cplx{0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0}};
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out.at(r, c) = second.at(r, 0) * first.at(0, c) +
                           second.at(r, 1) * first.at(1, c);
        }
    }
    return out;
}

Spinor apply(const Unitary2& u, const Spinor& psi) {
    return Spinor{u.at(0, 0) * psi.a + u.at(0, 1) * psi.b,
                  u.at(1, 0) * psi.a + u.at(1, 1) * psi.b};
}

void UnitaryProduct::push(const Unitary2& next) {
    product_ = compose(next, product_);
    if (++count_ % kReunitarizeEvery == 0) {
        product_ = product_.reunitarized();
    }
}

DensityMatrix2::DensityMatrix2()
    : m_{cplx{0.5, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0.5, 0}} {}

DensityMatrix2 DensityMatrix2::maximally_mixed() {
    return DensityMatrix2{};
}

DensityMatrix2 DensityMatrix2::from_bloch(const BlochVector& r) {
    if (r.length() > 1.0 + 1e-9) {
        throw std::invalid_argument("DensityMatrix2::from_bloch: Bloch vector longer than 1");
    }
    DensityMatrix2 rho;
    rho.m_[0] = cplx{(1.0 + r.z) / 2.0, 0.0};
    rho.m_[1] = cplx{r.x / 2.0, -r.y / 2.0};
    rho.m_[2] = cplx{r.x / 2.0, r.y / 2.0};
    rho.m_[3] = cplx{(1.0 - r.z) / 2.0, 0.0};
    return rho;
}

DensityMatrix2 DensityMatrix2::from_entries(cplx m00, cplx m01, cplx m10, cplx m11) {
    const double tol = 1e-9;
    if (std::fabs(m00.imag()) > tol || std::fabs(m11.imag()) > tol ||
        std::abs(m01 - std::conj(m10)) > tol ||
        std::fabs(m00.real() + m11.real() - 1.0) > tol) {
        throw std::invalid_argument("DensityMatrix2::from_entries: not Hermitian trace-one");
    }
    DensityMatrix2 rho;
    rho.m_ = {m00, m01, m10, m11};
    return rho;
}

BlochVector DensityMatrix2::bloch() const {
    return BlochVector{2.0 * m_[1].real(), -2.0 * m_[1].imag(),
                       m_[0].real() - m_[3].real()};
}

DensityMatrix2 density(const Spinor& psi) {
    return DensityMatrix2::from_entries(
        std::norm(psi.a), psi.a * std::conj(psi.b),
        psi.b * std::conj(psi.a), std::norm(psi.b));
}

DensityMatrix2 conjugate_channel(const Unitary2& u, const DensityMatrix2& rho) {
    cplx t[4];
    // t = U rho
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            t[2 * r + c] = u.at(r, 0) * rho.at(0, c) + u.at(r, 1) * rho.at(1, c);
        }
    }
    const Unitary2 ud = u.dagger();
    cplx out[4];
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            out[2 * r + c] = t[2 * r] * ud.at(0, c) + t[2 * r + 1] * ud.at(1, c);
        }
    }
    // conjugation preserves Hermiticity and trace; symmetrize rounding noise
    const cplx off = (out[1] + std::conj(out[2])) / 2.0;
    return DensityMatrix2::from_entries(out[0].real(), off, std::conj(off),
                                        1.0 - out[0].real());
}

double trace_distance(const DensityMatrix2& a, const DensityMatrix2& b) {
    const BlochVector ra = a.bloch();
    const BlochVector rb = b.bloch();
    const BlochVector d{ra.x - rb.x, ra.y - rb.y, ra.z - rb.z};
    return d.length() / 2.0;
}

Spinor spinor_from_uniforms(double u, double v) {
    return bloch_to_spinor(std::acos(1.0 - 2.0 * u), kTwoPi * v);
}

Spinor haar_random_spinor(Rng& rng) {
    const double u = rng.uniform();
    const double v = rng.uniform();
    return spinor_from_uniforms(u, v);
}

} // namespace hsesim
