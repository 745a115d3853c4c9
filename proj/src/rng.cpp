// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "hsesim/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hsesim {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += kGolden);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& word : state_) {
        word = splitmix64(s);
    }
    // xoshiro must not start from the all-zero state
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) {
        state_[0] = kGolden;
    }
}

Rng Rng::substream(std::uint64_t seed, std::uint64_t index) {
    // index-th element of the splitmix sequence anchored at seed
    std::uint64_t s = seed + index * kGolden;
    return Rng(splitmix64(s));
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t sample_poisson(Rng& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("sample_poisson: mean must be finite and >= 0");
    }
    if (mean == 0.0) {
        return 0;
    }
    if (mean < 10.0) {
        // Knuth: multiply uniforms until the product drops below e^-mean.
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = rng.uniform();
        while (prod > limit) {
            ++k;
            prod *= rng.uniform();
        }
        return k;
    }
    // PTRS transformed rejection (Hoermann 1993), exact for mean >= 10.
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::uint64_t>(kf);
        }
        if (kf < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            kf * log_mean - mean - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

} // namespace hsesim
