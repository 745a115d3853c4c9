// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace hsesim {

/// Reproducible random stream: xoshiro256** seeded through splitmix64.
///
/// All randomness in the library flows through this generator so that a
/// (seed, stream) pair yields bit-identical results on every platform and
/// every run. Substreams for independent trials/records are taken from
/// consecutive elements of the splitmix64 sequence anchored at `seed`, so
/// `substream(seed, i)` never depends on how many draws other substreams
/// consumed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Independent stream number `index` derived from `seed`.
    static Rng substream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

private:
    std::array<std::uint64_t, 4> state_{};
};

/// Exact Poisson sample (Knuth for small means, PTRS rejection for large).
std::uint64_t sample_poisson(Rng& rng, double mean);

} // namespace hsesim
