// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite. Each criterion prints exactly one PASS/FAIL line with
// its measured numbers and wall time; the process exits with the number of
// failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hsesim/channels.hpp"
#include "hsesim/drives.hpp"
#include "hsesim/moments.hpp"
#include "hsesim/rng.hpp"
#include "hsesim/su2.hpp"
#include "hsesim/tomo.hpp"
#include "oracles.hpp"

using namespace hsesim;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

class Criterion {
public:
    Criterion(int id, double budget_seconds)
        : id_(id), budget_(budget_seconds),
          start_(std::chrono::steady_clock::now()) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (!detail_.empty()) {
                detail_ += "; ";
            }
            detail_ += what;
        }
    }

    void note(const std::string& text) {
        if (!notes_.empty()) {
            notes_ += ", ";
        }
        notes_ += text;
    }

    void finish() {
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
                .count();
        if (seconds >= budget_) {
            pass_ = false;
            char buf[64];
            std::snprintf(buf, sizeof buf, "runtime %.2f s exceeds %.0f s", seconds,
                          budget_);
            if (!detail_.empty()) {
                detail_ += "; ";
            }
            detail_ += buf;
        }
        std::printf("criterion %d: %s — %s (%.2f s)\n", id_,
                    pass_ ? "PASS" : "FAIL",
                    pass_ ? notes_.c_str()
                          : (detail_ + (notes_.empty() ? "" : " [" + notes_ + "]"))
                                .c_str(),
                    seconds);
        std::fflush(stdout);
        if (!pass_) {
            ++g_failures;
        }
    }

private:
    int id_;
    double budget_;
    std::chrono::steady_clock::time_point start_;
    bool pass_ = true;
    std::string detail_;
    std::string notes_;
};

double delta_at(const DeltaSeries& series, int k, std::uint64_t t) {
    for (const DeltaRecord& rec : series.records) {
        if (rec.k == k && rec.time == t) {
            return rec.delta;
        }
    }
    return -1.0;
}

std::vector<DriveProtocol> canonical_drives() {
    return {DriveProtocol::floquet(kPi / 8, kPi / 8), DriveProtocol::smooth_qp(),
            DriveProtocol::fibonacci(0.38 * kPi, 0.22 * kPi)};
}

DriveProtocol random_protocol(Rng& rng) {
    const double a = 0.05 * kPi + 0.4 * kPi * rng.uniform();
    const double b = 0.05 * kPi + 0.4 * kPi * rng.uniform();
    switch (rng.next_u64() % 3) {
    case 0:
        return DriveProtocol::floquet(a, b);
    case 1:
        return DriveProtocol::smooth_qp();
    default:
        return DriveProtocol::fibonacci(a, b);
    }
}

// peak resident set (kB) from /proc/self/status; 0 when unavailable
long peak_rss_kb() {
    std::ifstream in("/proc/self/status");
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            return std::strtol(line.c_str() + 6, nullptr, 10);
        }
    }
    return 0;
}

void criterion_1_moment_identities() {
    Criterion c(1, 1.0);
    double worst = 0.0;
    for (const DriveProtocol& p : canonical_drives()) {
        for (int i = 0; i < 20; ++i) {
            Rng rng = Rng::substream(1, static_cast<std::uint64_t>(i));
            const Spinor psi = haar_random_spinor(rng);
            const DeltaSeries series = delta_series(p, psi, 4, {1});
            for (int k = 1; k <= 4; ++k) {
                worst = std::max(worst, std::fabs(delta_at(series, k, 1) -
                                                  static_cast<double>(k) / (k + 1)));
            }
        }
    }
    c.expect(worst <= 1e-10, "delta(1) differs from k/(k+1) by " + std::to_string(worst));

    bool haar_exact = true;
    for (int k = 1; k <= 4; ++k) {
        const std::vector<cplx> m = SymmetricMoment::haar(k).matrix();
        const double p = 1.0 / static_cast<double>(k + 1);
        for (int r = 0; r <= k; ++r) {
            for (int col = 0; col <= k; ++col) {
                const cplx want = (r == col) ? cplx{p, 0.0} : cplx{0.0, 0.0};
                haar_exact = haar_exact && m[static_cast<std::size_t>(r) * (k + 1) + col] == want;
            }
        }
    }
    c.expect(haar_exact, "haar moment is not exactly I/(k+1)");

    char buf[96];
    std::snprintf(buf, sizeof buf,
                  "delta(1)=k/(k+1) to %.1e over 3 drives x 20 states; haar exact",
                  worst);
    c.note(buf);
    c.finish();
}

void criterion_2_two_copy_oracle() {
    Criterion c(2, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        Rng rng = Rng::substream(2, static_cast<std::uint64_t>(i));
        const DriveProtocol p = random_protocol(rng);
        const Trajectory traj = evolve(p, haar_random_spinor(rng), 50);
        SymmetricMoment m2(2);
        for (const Spinor& s : traj.states) {
            m2.accumulate(s);
        }
        const double dicke = trace_distance(m2, SymmetricMoment::haar(2));
        const double dense = oracle::two_copy_delta2(traj.states);
        worst = std::max(worst, std::fabs(dicke - dense));
    }
    c.expect(worst <= 1e-9, "dicke vs dense mismatch " + std::to_string(worst));
    char buf[96];
    std::snprintf(buf, sizeof buf, "20 trajectories, max |dicke - dense| = %.2e", worst);
    c.note(buf);
    c.finish();
}

void criterion_3_floquet_non_ergodicity() {
    Criterion c(3, 10.0);
    const double tx = kPi / 8;
    const double ty = kPi / 8;
    const DriveProtocol p = DriveProtocol::floquet(tx, ty);

    // (a) eigenstate plateau against the closed-form 2-cycle value
    const double analytic = oracle::floquet_eigenstate_plateau(tx, ty);
    const auto [eig, eig2] = floquet_eigenstates(tx, ty);
    (void)eig2;
    const double measured = delta_at(delta_series(p, eig, 1, {200}), 1, 200);
    c.expect(std::fabs(measured - analytic) <= 0.03,
             "eigenstate delta(200) " + std::to_string(measured) +
                 " vs analytic " + std::to_string(analytic));

    // (b) plateau statistics over 100 haar-random initial states
    std::vector<std::uint64_t> tail;
    for (std::uint64_t t = 151; t <= 200; ++t) {
        tail.push_back(t);
    }
    int passing = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng = Rng::substream(3, static_cast<std::uint64_t>(i));
        const Spinor psi = haar_random_spinor(rng);
        const DeltaSeries series = delta_series(p, psi, 1, tail);
        double lo = 1.0;
        double hi = 0.0;
        for (const DeltaRecord& rec : series.records) {
            lo = std::min(lo, rec.delta);
            hi = std::max(hi, rec.delta);
        }
        const double at200 = delta_at(series, 1, 200);
        if (at200 > 0.15 && (hi - lo) < 0.05) {
            ++passing;
        }
    }
    c.expect(passing >= 80, std::to_string(passing) +
                                "/100 states satisfy delta(200)>0.15 with "
                                "last-50 range <0.05 (threshold 80)");
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "eigenstate delta(200)=%.4f vs analytic %.4f; %d/100 plateau "
                  "states above 0.15",
                  measured, analytic, passing);
    c.note(buf);
    c.finish();
}

void criterion_4_smooth_qp_1hse() {
    Criterion c(4, 30.0);
    const DriveProtocol p = DriveProtocol::smooth_qp();
    double worst1e4 = 0.0;
    bool monotone = true;
    for (int i = 0; i < 10; ++i) {
        Rng rng = Rng::substream(4, static_cast<std::uint64_t>(i));
        const Spinor psi = haar_random_spinor(rng);
        const DeltaSeries series = delta_series(p, psi, 1, {100, 10000});
        const double late = delta_at(series, 1, 10000);
        worst1e4 = std::max(worst1e4, late);
        monotone = monotone && late < delta_at(series, 1, 100);
    }
    c.expect(worst1e4 < 0.02, "delta1(1e4) reaches " + std::to_string(worst1e4));
    c.expect(monotone, "delta1(1e4) not below delta1(1e2) in every run");

    // second-moment plateau witness over a fixed search grid
    double best = 0.0;
    double best_theta = 0.0;
    double best_phi = 0.0;
    std::vector<std::pair<double, double>> candidates;
    for (double theta : {0.0, kPi / 4, kPi / 2, 3 * kPi / 4}) {
        for (double phi : {0.0, kPi / 4, kPi / 2}) {
            candidates.emplace_back(theta, phi);
        }
    }
    for (int i = 0; i < 4; ++i) {
        Rng rng = Rng::substream(44, static_cast<std::uint64_t>(i));
        const BlochVector r = spinor_to_bloch(haar_random_spinor(rng));
        candidates.emplace_back(std::acos(r.z), std::atan2(r.y, r.x));
    }
    for (const auto& [theta, phi] : candidates) {
        const double d2 = delta_at(
            delta_series(p, bloch_to_spinor(theta, phi), 2, {10000}), 2, 10000);
        if (d2 > best) {
            best = d2;
            best_theta = theta;
            best_phi = phi;
        }
    }
    c.expect(best > 0.03, "no searched state has delta2(1e4) > 0.03");

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "max delta1(1e4)=%.1e over 10 states; witness (theta=%.3f, "
                  "phi=%.3f) has delta2(1e4)=%.4f",
                  worst1e4, best_theta, best_phi, best);
    c.note(buf);
    c.finish();
}

void criterion_5_fibonacci_chse() {
    Criterion c(5, 60.0);
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<std::pair<std::string, Spinor>> states{
        {"|0>", Spinor{1.0, 0.0}},
        {"|1>", Spinor{0.0, 1.0}},
        {"|+>", Spinor{s, s}},
        {"|->", Spinor{s, -s}}};
    bool all_decay = true;
    std::string failures;
    auto check_pair = [&](double tx, double tz, const std::string& name,
                          const Spinor& psi) {
        const DeltaSeries series = delta_series(DriveProtocol::fibonacci(tx, tz), psi,
                                                4, {100, 987});
        for (int k = 1; k <= 4; ++k) {
            if (!(delta_at(series, k, 987) < delta_at(series, k, 100))) {
                all_decay = false;
                failures += " (" + name + ", k=" + std::to_string(k) + ")";
            }
        }
    };
    for (const auto& [name, psi] : states) {
        check_pair(0.38 * kPi, 0.22 * kPi, "0.38/0.22 " + name, psi);
    }
    check_pair(0.43 * kPi, 0.37 * kPi, "0.43/0.37 |0>", states[0].second);
    check_pair(0.36 * kPi, 0.18 * kPi, "0.36/0.18 |0>", states[0].second);
    check_pair(0.39 * kPi, 0.39 * kPi, "0.39/0.39 |0>", states[0].second);
    c.expect(all_decay, "delta(987) !< delta(100) for" + failures);

    // slow pair: decay visible only at extended times
    const DeltaSeries slow = delta_series(DriveProtocol::fibonacci(0.11 * kPi, 0.41 * kPi),
                                          states[0].second, 1, {1000, 100000});
    const double early = delta_at(slow, 1, 1000);
    const double late = delta_at(slow, 1, 100000);
    c.expect(late < early, "slow pair: delta1(1e5) " + std::to_string(late) +
                               " !< delta1(1e3) " + std::to_string(early));

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "28 decay checks over 4 states + 3 extra pairs; slow pair "
                  "delta1: %.3f -> %.3f",
                  early, late);
    c.note(buf);
    c.finish();
}

void criterion_6_twirl_oracle() {
    Criterion c(6, 20.0);
    const DriveProtocol p = DriveProtocol::smooth_qp();
    const DensityMatrix2 mixed = DensityMatrix2::maximally_mixed();
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        Rng rng = Rng::substream(6, static_cast<std::uint64_t>(i));
        const DensityMatrix2 rho = density(haar_random_spinor(rng));
        worst = std::max(worst, trace_distance(time_avg_channel(p, rho, 100000), mixed));
    }
    c.expect(worst < 0.01, "finite-T twirl residual " + std::to_string(worst));

    double worst_analytic = 0.0;
    for (int i = 0; i < 100; ++i) {
        Rng rng = Rng::substream(66, static_cast<std::uint64_t>(i));
        const BlochVector dir = spinor_to_bloch(haar_random_spinor(rng));
        const double f = rng.uniform();
        const DensityMatrix2 rho = DensityMatrix2::from_bloch(
            BlochVector{f * dir.x, f * dir.y, f * dir.z});
        const DensityMatrix2 out =
            dephasing_channel(PauliAxis::z, dephasing_channel(PauliAxis::x, rho));
        worst_analytic = std::max(worst_analytic, trace_distance(out, mixed));
    }
    c.expect(worst_analytic <= 1e-14,
             "analytic Nz∘Nx leaves residual " + std::to_string(worst_analytic));

    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "max residual %.1e at T=1e5 (10 inputs); Nz∘Nx exact to %.1e "
                  "(100 inputs)",
                  worst, worst_analytic);
    c.note(buf);
    c.finish();
}

void criterion_7_tomography() {
    Criterion c(7, 30.0);
    const TomoCalibration cal{1.0, 0.7, 0.92};
    const DriveProtocol p = DriveProtocol::fibonacci(0.38 * kPi, 0.22 * kPi);

    // noiseless end-to-end recovery, 100-step run
    const Trajectory short_traj = evolve(p, Spinor{1.0, 0.0}, 100);
    double worst_recovery = 0.0;
    for (const Spinor& psi : short_traj.states) {
        const TomoRecord rec = pl_expectations(depolarize(density(psi), cal.pe), cal);
        const Purified pure =
            purify(polarization_correct(reconstruct(rec, cal), cal.pe));
        worst_recovery = std::max(worst_recovery, state_distance(pure.state, psi));
    }
    c.expect(worst_recovery <= 1e-10,
             "noiseless recovery error " + std::to_string(worst_recovery));

    // noisy run at 10^4 shots: delta1(987) within 0.05 of ideal
    const Trajectory traj = evolve(p, Spinor{1.0, 0.0}, 987);
    const double ideal =
        delta_at(delta_series(std::span<const Spinor>(traj.states), 1, {987}), 1, 987);
    std::vector<Spinor> recon;
    recon.reserve(traj.states.size());
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        TomoRecord rec = pl_expectations(depolarize(density(traj.states[t]), cal.pe), cal);
        Rng rng = Rng::substream(7, t);
        rec = add_shot_noise(rec, 10000, rng);
        recon.push_back(
            purify(polarization_correct(reconstruct(rec, cal), cal.pe)).state);
    }
    const double noisy =
        delta_at(delta_series(std::span<const Spinor>(recon), 1, {987}), 1, 987);
    c.expect(std::fabs(noisy - ideal) <= 0.05,
             "noisy delta1(987) " + std::to_string(noisy) + " vs ideal " +
                 std::to_string(ideal));

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "noiseless recovery %.1e; delta1(987): ideal %.4f vs 1e4-shot "
                  "reconstruction %.4f",
                  worst_recovery, ideal, noisy);
    c.note(buf);
    c.finish();
}

void criterion_8_performance() {
    Criterion c(8, 10.0);
    const long rss_before = peak_rss_kb();
    const std::vector<std::uint64_t> times = default_sample_times(1000000, 120, true);
    const DriveProtocol p = DriveProtocol::fibonacci(0.38 * kPi, 0.22 * kPi);
    const auto start = std::chrono::steady_clock::now();
    const DeltaSeries series = delta_series(p, Spinor{1.0, 0.0}, 4, times);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const long rss_after = peak_rss_kb();

    c.expect(series.records.size() == times.size() * 4, "missing records");
    c.expect(seconds < 10.0, "10^6-step run took " + std::to_string(seconds) + " s");
    const long grew_kb = rss_after - rss_before;
    // a materialized 10^6-state trajectory would cost >= 32 MB
    if (rss_before > 0) {
        c.expect(grew_kb < 16384, "peak RSS grew by " + std::to_string(grew_kb) + " kB");
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "10^6 steps, k<=4, %zu sample times in %.2f s; peak RSS growth "
                  "%ld kB",
                  times.size(), seconds, grew_kb);
    c.note(buf);
    c.finish();
}

} // namespace

int main() {
    std::printf("hsesim acceptance suite\n");
    criterion_1_moment_identities();
    criterion_2_two_copy_oracle();
    criterion_3_floquet_non_ergodicity();
    criterion_4_smooth_qp_1hse();
    criterion_5_fibonacci_chse();
    criterion_6_twirl_oracle();
    criterion_7_tomography();
    criterion_8_performance();
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
    } else {
        std::printf("all criteria passed\n");
    }
    return g_failures;
}
