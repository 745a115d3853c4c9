// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hsesim/drives.hpp"
#include "hsesim/su2.hpp"

namespace hsesim {

/// |psi>^{tensor k} expressed in the Dicke basis of the symmetric subspace:
/// amplitudes c_m = sqrt(binom(k, m)) a^{k-m} b^m, m = 0..k.
struct DickeVector {
    int k = 1;
    std::vector<cplx> amplitudes; // k+1 entries
};

DickeVector embed_symmetric(const Spinor& psi, int k);

/// Running mean of symmetric-subspace outer products: the k-th moment of a
/// temporal ensemble. Accumulation uses Kahan-compensated sums so that
/// 10^6-state means stay accurate to ~1e-12.
class SymmetricMoment {
public:
    explicit SymmetricMoment(int k);

    /// k-th moment of the Haar ensemble: I_{k+1} / (k+1).
    static SymmetricMoment haar(int k);

    /// Moment of a single pure state (weight 1).
    static SymmetricMoment from_state(const Spinor& psi, int k);

    void accumulate(const Spinor& psi);
    void accumulate(const DickeVector& embedded);

    /// Weighted-average merge of two accumulators of the same order.
    void merge(const SymmetricMoment& other);

    int order() const { return k_; }
    std::uint64_t weight() const { return weight_; }
    int dim() const { return k_ + 1; }

    /// Mean matrix, (k+1)x(k+1) row-major. Requires weight >= 1.
    std::vector<cplx> matrix() const;

    /// Partial trace over one tensor copy: the consistent (k-1)-th moment.
    /// Requires k >= 2.
    SymmetricMoment reduced() const;

private:
    int k_;
    std::uint64_t weight_ = 0;
    std::vector<cplx> sum_;
    std::vector<cplx> comp_;
};

/// All eigenvalues of a Hermitian matrix (row-major, dim <= 16), ascending.
/// Cyclic Jacobi; deterministic and accurate to ~1e-14 for unit-scale input.
/// Throws if the matrix deviates from Hermitian by more than 1e-10.
std::vector<double> hermitian_eigenvalues(std::span<const cplx> matrix, int dim);

/// Half the trace norm of a - b (same order required), clamped to [0, 1].
double trace_distance(const SymmetricMoment& a, const SymmetricMoment& b);

struct DeltaRecord {
    std::uint64_t time = 0;
    int k = 1;
    double delta = 0.0;
};

struct DeltaSeries {
    std::string protocol_label;
    std::string initial_label;
    std::vector<DeltaRecord> records; // sorted by (k, time)
};

/// Trace distances of the running temporal moments to the Haar moments for
/// k = 1..k_max at each requested observation time. Single streaming pass:
/// O(sum (k+1)^2) per step, eigensolves only at sample times, memory
/// independent of the trajectory length.
DeltaSeries delta_series(const DriveProtocol& protocol, const Spinor& psi0,
                         int k_max, std::vector<std::uint64_t> sample_times);

/// Same from an explicit list of states (t = 0..n-1).
DeltaSeries delta_series(std::span<const Spinor> states, int k_max,
                         std::vector<std::uint64_t> sample_times);

/// ~`target` geometrically spaced integers in [1, t_max], always containing
/// t_max, plus every Fibonacci number <= t_max when requested.
std::vector<std::uint64_t> default_sample_times(std::uint64_t t_max,
                                                std::size_t target,
                                                bool include_fibonacci);

} // namespace hsesim
