// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "hsesim/moments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace hsesim {

namespace {

constexpr int kMaxEigDim = 16;
constexpr int kMaxSeriesOrder = 8;

double binomial(int n, int m) {
    double value = 1.0;
    for (int i = 1; i <= m; ++i) {
        value *= static_cast<double>(n - m + i) / static_cast<double>(i);
    }
    return value;
}

void kahan_add(cplx& sum, cplx& comp, cplx term) {
    const cplx y = term - comp;
    const cplx t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

void check_order(int k) {
    if (k < 1) {
        throw std::invalid_argument("moment order k must be >= 1");
    }
    if (k + 1 > kMaxEigDim) {
        throw std::invalid_argument("moment order k must be <= 15");
    }
}

} // namespace

DickeVector embed_symmetric(const Spinor& psi, int k) {
    check_order(k);
    DickeVector v;
    v.k = k;
    v.amplitudes.resize(static_cast<std::size_t>(k) + 1);
    cplx a_pow{1.0, 0.0};
    std::vector<cplx> b_pow(static_cast<std::size_t>(k) + 1);
    b_pow[0] = cplx{1.0, 0.0};
    for (int m = 1; m <= k; ++m) {
        b_pow[m] = b_pow[m - 1] * psi.b;
    }
    for (int m = k; m >= 0; --m) {
        v.amplitudes[m] = std::sqrt(binomial(k, m)) * a_pow * b_pow[m];
        a_pow *= psi.a;
    }
    return v;
}

SymmetricMoment::SymmetricMoment(int k) : k_(k) {
    check_order(k);
    const std::size_t n = static_cast<std::size_t>(k + 1) * (k + 1);
    sum_.assign(n, cplx{0.0, 0.0});
    comp_.assign(n, cplx{0.0, 0.0});
}

SymmetricMoment SymmetricMoment::haar(int k) {
    SymmetricMoment m(k);
    const double p = 1.0 / static_cast<double>(k + 1);
    for (int i = 0; i <= k; ++i) {
        m.sum_[static_cast<std::size_t>(i) * (k + 2)] = cplx{p, 0.0};
    }
    m.weight_ = 1;
    return m;
}

SymmetricMoment SymmetricMoment::from_state(const Spinor& psi, int k) {
    SymmetricMoment m(k);
    m.accumulate(psi);
    return m;
}

void SymmetricMoment::accumulate(const Spinor& psi) {
    accumulate(embed_symmetric(psi, k_));
}

void SymmetricMoment::accumulate(const DickeVector& embedded) {
    if (embedded.k != k_) {
        throw std::invalid_argument("SymmetricMoment::accumulate: order mismatch");
    }
    const int d = dim();
    for (int r = 0; r < d; ++r) {
        const cplx cr = embedded.amplitudes[r];
        for (int c = 0; c < d; ++c) {
            kahan_add(sum_[static_cast<std::size_t>(r) * d + c],
                      comp_[static_cast<std::size_t>(r) * d + c],
                      cr * std::conj(embedded.amplitudes[c]));
        }
    }
    ++weight_;
}

void SymmetricMoment::merge(const SymmetricMoment& other) {
    if (other.k_ != k_) {
        throw std::invalid_argument("SymmetricMoment::merge: order mismatch");
    }
    for (std::size_t i = 0; i < sum_.size(); ++i) {
        kahan_add(sum_[i], comp_[i], other.sum_[i]);
    }
    weight_ += other.weight_;
}

std::vector<cplx> SymmetricMoment::matrix() const {
    if (weight_ == 0) {
        throw std::invalid_argument("SymmetricMoment::matrix: no accumulated states");
    }
    std::vector<cplx> out(sum_.size());
    const double inv = 1.0 / static_cast<double>(weight_);
    for (std::size_t i = 0; i < sum_.size(); ++i) {
        out[i] = sum_[i] * inv;
    }
    return out;
}

SymmetricMoment SymmetricMoment::reduced() const {
    if (k_ < 2) {
        throw std::invalid_argument("SymmetricMoment::reduced: order must be >= 2");
    }
    SymmetricMoment out(k_ - 1);
    const int d = dim();
    const int dr = d - 1;
    // Tracing one copy out of a symmetric k-fold dyad in Dicke coordinates:
    // N[n,n'] = sqrt(B(k-1,n) B(k-1,n')) * ( M[n,n'] / sqrt(B(k,n) B(k,n'))
    //           + M[n+1,n'+1] / sqrt(B(k,n+1) B(k,n'+1)) )
    std::vector<double> rb(static_cast<std::size_t>(d));
    std::vector<double> rbr(static_cast<std::size_t>(dr));
    for (int m = 0; m < d; ++m) {
        rb[m] = std::sqrt(binomial(k_, m));
    }
    for (int m = 0; m < dr; ++m) {
        rbr[m] = std::sqrt(binomial(k_ - 1, m));
    }
    for (int n = 0; n < dr; ++n) {
        for (int np = 0; np < dr; ++np) {
            const cplx low = sum_[static_cast<std::size_t>(n) * d + np] /
                             (rb[n] * rb[np]);
            const cplx high = sum_[static_cast<std::size_t>(n + 1) * d + np + 1] /
                              (rb[n + 1] * rb[np + 1]);
            out.sum_[static_cast<std::size_t>(n) * dr + np] =
                rbr[n] * rbr[np] * (low + high);
        }
    }
    out.weight_ = weight_;
    return out;
}

std::vector<double> hermitian_eigenvalues(std::span<const cplx> matrix, int dim) {
    if (dim < 1 || dim > kMaxEigDim) {
        throw std::invalid_argument("hermitian_eigenvalues: dim must be in [1, 16]");
    }
    if (matrix.size() != static_cast<std::size_t>(dim) * dim) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix size mismatch");
    }
    for (int r = 0; r < dim; ++r) {
        for (int c = r; c < dim; ++c) {
            const cplx diff = matrix[static_cast<std::size_t>(r) * dim + c] -
                              std::conj(matrix[static_cast<std::size_t>(c) * dim + r]);
            if (std::abs(diff) > 2e-10) {
                throw std::invalid_argument("hermitian_eigenvalues: matrix is not "
                                            "Hermitian within 1e-10");
            }
        }
    }
    if (dim == 1) {
        return {matrix[0].real()};
    }

    // Cyclic Jacobi with complex rotations. a[p][q] is phased to a real
    // off-diagonal entry, then a standard symmetric 2x2 rotation zeroes it.
    std::vector<cplx> a(matrix.begin(), matrix.end());
    auto at = [&](int r, int c) -> cplx& {
        return a[static_cast<std::size_t>(r) * dim + c];
    };
    // enforce exact Hermiticity of the working copy
    for (int r = 0; r < dim; ++r) {
        at(r, r) = cplx{at(r, r).real(), 0.0};
        for (int c = r + 1; c < dim; ++c) {
            const cplx v = (at(r, c) + std::conj(at(c, r))) * 0.5;
            at(r, c) = v;
            at(c, r) = std::conj(v);
        }
    }
    double scale = 0.0;
    for (const cplx& v : a) {
        scale += std::norm(v);
    }
    const double stop = std::max(scale, 1e-300) * 1e-30;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                off += std::norm(at(p, q));
            }
        }
        if (off * 2.0 <= stop) {
            break;
        }
        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                const cplx apq = at(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                const cplx phase = apq / g; // e^{i phi}
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double tt = (tau >= 0.0)
                                      ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                      : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;
                // R has columns p,q: [c, s; -s e^{-i phi}, c e^{-i phi}]
                const cplx rqp = -s * std::conj(phase);
                const cplx rqq = c * std::conj(phase);
                // M <- R^dag M R
                for (int i = 0; i < dim; ++i) {
                    const cplx mip = at(i, p);
                    const cplx miq = at(i, q);
                    at(i, p) = c * mip + rqp * miq;
                    at(i, q) = s * mip + rqq * miq;
                }
                for (int j = 0; j < dim; ++j) {
                    const cplx mpj = at(p, j);
                    const cplx mqj = at(q, j);
                    at(p, j) = c * mpj + std::conj(rqp) * mqj;
                    at(q, j) = s * mpj + std::conj(rqq) * mqj;
                }
                at(p, q) = cplx{0.0, 0.0};
                at(q, p) = cplx{0.0, 0.0};
                at(p, p) = cplx{at(p, p).real(), 0.0};
                at(q, q) = cplx{at(q, q).real(), 0.0};
            }
        }
    }

    std::vector<double> eig(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        eig[i] = at(i, i).real();
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

double trace_distance(const SymmetricMoment& a, const SymmetricMoment& b) {
    if (a.order() != b.order()) {
        throw std::invalid_argument("trace_distance: moment orders differ");
    }
    const std::vector<cplx> ma = a.matrix();
    const std::vector<cplx> mb = b.matrix();
    std::vector<cplx> diff(ma.size());
    for (std::size_t i = 0; i < ma.size(); ++i) {
        diff[i] = ma[i] - mb[i];
    }
    const std::vector<double> eig = hermitian_eigenvalues(diff, a.dim());
    double sum = 0.0;
    for (double v : eig) {
        sum += std::fabs(v);
    }
    return std::clamp(sum / 2.0, 0.0, 1.0);
}

namespace {

std::string bloch_label(const Spinor& psi) {
    const BlochVector r = spinor_to_bloch(psi);
    const double theta = std::acos(std::clamp(r.z, -1.0, 1.0));
    const double phi = std::atan2(r.y, r.x);
    char buf[96];
    std::snprintf(buf, sizeof buf, "theta=%.17g phi=%.17g", theta, phi);
    return buf;
}

std::vector<std::uint64_t> prepare_times(std::vector<std::uint64_t> times) {
    if (times.empty()) {
        throw std::invalid_argument("delta_series: sample_times must be nonempty");
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.front() < 1) {
        throw std::invalid_argument("delta_series: sample times start at T = 1");
    }
    return times;
}

class DeltaAccumulator {
public:
    DeltaAccumulator(int k_max, const std::vector<std::uint64_t>& times)
        : times_(times) {
        if (k_max < 1 || k_max > kMaxSeriesOrder) {
            throw std::invalid_argument("delta_series: k_max must be in [1, 8]");
        }
        for (int k = 1; k <= k_max; ++k) {
            acc_.emplace_back(k);
            haar_.push_back(SymmetricMoment::haar(k));
        }
        records_.reserve(times_.size() * static_cast<std::size_t>(k_max));
    }

    // feed state at t = weight so far; returns true while more samples remain
    bool feed(const Spinor& psi) {
        for (auto& acc : acc_) {
            acc.accumulate(psi);
        }
        const std::uint64_t t_now = acc_.front().weight();
        if (next_ < times_.size() && t_now == times_[next_]) {
            for (std::size_t i = 0; i < acc_.size(); ++i) {
                records_.push_back(DeltaRecord{t_now, acc_[i].order(),
                                               trace_distance(acc_[i], haar_[i])});
            }
            ++next_;
        }
        return next_ < times_.size();
    }

    std::vector<DeltaRecord> take_records() {
        std::sort(records_.begin(), records_.end(),
                  [](const DeltaRecord& a, const DeltaRecord& b) {
                      return a.k != b.k ? a.k < b.k : a.time < b.time;
                  });
        return std::move(records_);
    }

private:
    const std::vector<std::uint64_t>& times_;
    std::vector<SymmetricMoment> acc_;
    std::vector<SymmetricMoment> haar_;
    std::vector<DeltaRecord> records_;
    std::size_t next_ = 0;
};

} // namespace

DeltaSeries delta_series(const DriveProtocol& protocol, const Spinor& psi0,
                         int k_max, std::vector<std::uint64_t> sample_times) {
    const std::vector<std::uint64_t> times = prepare_times(std::move(sample_times));
    if (std::fabs(psi0.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("delta_series: initial state must be normalized");
    }
    DeltaAccumulator acc(k_max, times);
    const KickGenerator kick(protocol);
    Spinor psi = psi0;
    bool more = acc.feed(psi);
    for (std::uint64_t t = 1; more; ++t) {
        psi = apply(kick(t), psi).normalized();
        more = acc.feed(psi);
    }
    DeltaSeries out;
    out.protocol_label = protocol.describe();
    out.initial_label = bloch_label(psi0);
    out.records = acc.take_records();
    return out;
}

DeltaSeries delta_series(std::span<const Spinor> states, int k_max,
                         std::vector<std::uint64_t> sample_times) {
    const std::vector<std::uint64_t> times = prepare_times(std::move(sample_times));
    if (times.back() > states.size()) {
        throw std::invalid_argument("delta_series: sample time exceeds state count");
    }
    DeltaAccumulator acc(k_max, times);
    for (const Spinor& psi : states) {
        if (!acc.feed(psi)) {
            break;
        }
    }
    DeltaSeries out;
    out.protocol_label = "states";
    out.initial_label = states.empty() ? "" : bloch_label(states.front());
    out.records = acc.take_records();
    return out;
}

std::vector<std::uint64_t> default_sample_times(std::uint64_t t_max,
                                                std::size_t target,
                                                bool include_fibonacci) {
    if (t_max < 1) {
        throw std::invalid_argument("default_sample_times: t_max must be >= 1");
    }
    if (target < 2) {
        target = 2;
    }
    std::vector<std::uint64_t> times;
    const double log_max = std::log(static_cast<double>(t_max));
    for (std::size_t i = 0; i < target; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(target - 1);
        const auto t = static_cast<std::uint64_t>(std::llround(std::exp(frac * log_max)));
        times.push_back(std::clamp<std::uint64_t>(t, 1, t_max));
    }
    if (include_fibonacci) {
        std::uint64_t fa = 1;
        std::uint64_t fb = 2;
        while (fa <= t_max) {
            times.push_back(fa);
            const std::uint64_t next = fa + fb;
            fa = fb;
            fb = next;
        }
    }
    times.push_back(t_max);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

} // namespace hsesim
