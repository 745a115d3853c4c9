// Copyright (c) 2026 hsesim developers
// SPDX-License-Identifier: Apache-2.0
#include "hsesim.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "hsesim/channels.hpp"
#include "hsesim/drives.hpp"
#include "hsesim/moments.hpp"
#include "hsesim/rng.hpp"
#include "hsesim/su2.hpp"
#include "hsesim/tomo.hpp"

using namespace hsesim;

extern "C" struct hse_protocol {
    DriveProtocol value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) {
    g_last_error = what ? what : "";
}

hse_status fail(hse_status code, const char* what) {
    set_error(what);
    return code;
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
hse_status guarded(Fn&& fn) {
    try {
        const hse_status st = fn();
        if (st == HSE_OK) {
            set_error("");
        }
        return st;
    } catch (const RecordParseError& e) {
        return fail(HSE_ERR_PARSE, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(HSE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(HSE_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(HSE_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(HSE_ERR_INTERNAL, e.what());
    }
}

hse_status require(bool ok, const char* what) {
    if (!ok) {
        throw std::invalid_argument(what);
    }
    return HSE_OK;
}

Spinor to_spinor(const hse_spinor& s) {
    return Spinor{cplx{s.a_re, s.a_im}, cplx{s.b_re, s.b_im}};
}

hse_spinor from_spinor(const Spinor& s) {
    return hse_spinor{s.a.real(), s.a.imag(), s.b.real(), s.b.imag()};
}

DensityMatrix2 to_density(const hse_density& d) {
    const cplx off{d.alpha, d.beta};
    return DensityMatrix2::from_entries(d.p0, off, std::conj(off), 1.0 - d.p0);
}

hse_density from_density(const DensityMatrix2& rho) {
    return hse_density{rho.at(0, 0).real(), rho.at(0, 1).real(), rho.at(0, 1).imag()};
}

TomoCalibration to_calibration(const hse_tomo_calibration& c) {
    return TomoCalibration{c.l0, c.l1, c.pe};
}

TomoRecord to_record(const hse_tomo_record& r) {
    TomoRecord rec;
    for (int i = 0; i < 6; ++i) {
        rec.e[i] = r.e[i];
    }
    rec.shots = r.shots;
    return rec;
}

hse_tomo_record from_record(const TomoRecord& rec) {
    hse_tomo_record out{};
    for (int i = 0; i < 6; ++i) {
        out.e[i] = rec.e[i];
    }
    out.shots = rec.shots;
    return out;
}

} // namespace

extern "C" {

HSE_API uint32_t hse_abi_version(void) {
    return HSE_ABI_VERSION;
}

HSE_API const char* hse_version_string(void) {
    return "hsesim 0.1.0";
}

HSE_API const char* hse_status_message(hse_status status) {
    switch (status) {
    case HSE_OK:
        return "success";
    case HSE_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case HSE_ERR_NUMERIC:
        return "numerical invariant violated";
    case HSE_ERR_IO:
        return "I/O error";
    case HSE_ERR_PARSE:
        return "parse error";
    case HSE_ERR_BUFFER_TOO_SMALL:
        return "buffer too small";
    case HSE_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

HSE_API const char* hse_last_error(void) {
    return g_last_error.c_str();
}

HSE_API hse_status hse_spinor_from_angles(double theta, double phi, hse_spinor* out) {
    return guarded([&] {
        require(out != nullptr, "hse_spinor_from_angles: out is NULL");
        *out = from_spinor(bloch_to_spinor(theta, phi));
        return HSE_OK;
    });
}

HSE_API hse_status hse_spinor_to_bloch(const hse_spinor* psi, hse_bloch* out) {
    return guarded([&] {
        require(psi != nullptr && out != nullptr, "hse_spinor_to_bloch: NULL argument");
        const BlochVector r = spinor_to_bloch(to_spinor(*psi));
        *out = hse_bloch{r.x, r.y, r.z};
        return HSE_OK;
    });
}

HSE_API hse_status hse_spinor_haar(uint64_t seed, uint64_t stream, hse_spinor* out) {
    return guarded([&] {
        require(out != nullptr, "hse_spinor_haar: out is NULL");
        Rng rng = Rng::substream(seed, stream);
        *out = from_spinor(haar_random_spinor(rng));
        return HSE_OK;
    });
}

HSE_API hse_status hse_density_from_spinor(const hse_spinor* psi, hse_density* out) {
    return guarded([&] {
        require(psi != nullptr && out != nullptr, "hse_density_from_spinor: NULL argument");
        *out = from_density(density(to_spinor(*psi).normalized()));
        return HSE_OK;
    });
}

HSE_API hse_status hse_density_trace_distance(const hse_density* a,
                                              const hse_density* b, double* out) {
    return guarded([&] {
        require(a != nullptr && b != nullptr && out != nullptr,
                "hse_density_trace_distance: NULL argument");
        *out = trace_distance(to_density(*a), to_density(*b));
        return HSE_OK;
    });
}

HSE_API hse_status hse_protocol_floquet(double theta_x, double theta_y,
                                        hse_protocol** out) {
    return guarded([&] {
        require(out != nullptr, "hse_protocol_floquet: out is NULL");
        *out = new hse_protocol{DriveProtocol::floquet(theta_x, theta_y)};
        return HSE_OK;
    });
}

HSE_API hse_status hse_protocol_smooth_qp(hse_protocol** out) {
    return guarded([&] {
        require(out != nullptr, "hse_protocol_smooth_qp: out is NULL");
        *out = new hse_protocol{DriveProtocol::smooth_qp()};
        return HSE_OK;
    });
}

HSE_API hse_status hse_protocol_fibonacci(double theta_x, double theta_z,
                                          hse_protocol** out) {
    return guarded([&] {
        require(out != nullptr, "hse_protocol_fibonacci: out is NULL");
        *out = new hse_protocol{DriveProtocol::fibonacci(theta_x, theta_z)};
        return HSE_OK;
    });
}

HSE_API hse_status hse_protocol_custom(double omega2, const double* begin,
                                       const double* end, const double* kick,
                                       size_t n_arcs, hse_protocol** out) {
    return guarded([&] {
        require(out != nullptr && begin != nullptr && end != nullptr && kick != nullptr,
                "hse_protocol_custom: NULL argument");
        std::vector<KickArc> arcs(n_arcs);
        for (size_t i = 0; i < n_arcs; ++i) {
            arcs[i] = KickArc{begin[i], end[i],
                              {kick[3 * i], kick[3 * i + 1], kick[3 * i + 2]}};
        }
        *out = new hse_protocol{DriveProtocol::custom_piecewise(omega2, std::move(arcs))};
        return HSE_OK;
    });
}

HSE_API void hse_protocol_free(hse_protocol* protocol) {
    delete protocol;
}

HSE_API hse_status hse_protocol_kick(const hse_protocol* protocol, uint64_t t,
                                     double out[8]) {
    return guarded([&] {
        require(protocol != nullptr && out != nullptr, "hse_protocol_kick: NULL argument");
        const Unitary2 u = kick_at(protocol->value, t);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                out[4 * r + 2 * c] = u.at(r, c).real();
                out[4 * r + 2 * c + 1] = u.at(r, c).imag();
            }
        }
        return HSE_OK;
    });
}

HSE_API hse_status hse_evolve(const hse_protocol* protocol, const hse_spinor* initial,
                              uint64_t steps, hse_spinor* out_states) {
    return guarded([&] {
        require(protocol != nullptr && initial != nullptr && out_states != nullptr,
                "hse_evolve: NULL argument");
        const Trajectory traj = evolve(protocol->value, to_spinor(*initial), steps);
        for (std::size_t i = 0; i < traj.states.size(); ++i) {
            out_states[i] = from_spinor(traj.states[i]);
        }
        return HSE_OK;
    });
}

HSE_API hse_status hse_floquet_eigenstates(double theta_x, double theta_y,
                                           hse_spinor* first, hse_spinor* second) {
    return guarded([&] {
        require(first != nullptr && second != nullptr,
                "hse_floquet_eigenstates: NULL argument");
        const auto [a, b] = floquet_eigenstates(theta_x, theta_y);
        *first = from_spinor(a);
        *second = from_spinor(b);
        return HSE_OK;
    });
}

namespace {

hse_status fill_deltas(const DeltaSeries& series, int k_max,
                       const uint64_t* sample_times, size_t n_times, double* out) {
    // records are sorted by (k, time); output layout is time-major
    for (const DeltaRecord& rec : series.records) {
        size_t ti = 0;
        while (ti < n_times && sample_times[ti] != rec.time) {
            ++ti;
        }
        if (ti == n_times) {
            continue; // deduplicated sample time
        }
        for (; ti < n_times && sample_times[ti] == rec.time; ++ti) {
            out[ti * static_cast<size_t>(k_max) + static_cast<size_t>(rec.k - 1)] =
                rec.delta;
        }
    }
    return HSE_OK;
}

} // namespace

HSE_API hse_status hse_delta_series(const hse_protocol* protocol,
                                    const hse_spinor* initial, int k_max,
                                    const uint64_t* sample_times, size_t n_times,
                                    double* out) {
    return guarded([&] {
        require(protocol != nullptr && initial != nullptr && sample_times != nullptr &&
                    out != nullptr && n_times > 0,
                "hse_delta_series: NULL argument or empty sample list");
        const DeltaSeries series =
            delta_series(protocol->value, to_spinor(*initial), k_max,
                         std::vector<uint64_t>(sample_times, sample_times + n_times));
        return fill_deltas(series, k_max, sample_times, n_times, out);
    });
}

HSE_API hse_status hse_delta_series_states(const hse_spinor* states, size_t n_states,
                                           int k_max, const uint64_t* sample_times,
                                           size_t n_times, double* out) {
    return guarded([&] {
        require(states != nullptr && sample_times != nullptr && out != nullptr &&
                    n_states > 0 && n_times > 0,
                "hse_delta_series_states: NULL argument or empty input");
        std::vector<Spinor> list(n_states);
        for (size_t i = 0; i < n_states; ++i) {
            list[i] = to_spinor(states[i]);
        }
        const DeltaSeries series =
            delta_series(std::span<const Spinor>(list), k_max,
                         std::vector<uint64_t>(sample_times, sample_times + n_times));
        return fill_deltas(series, k_max, sample_times, n_times, out);
    });
}

HSE_API hse_status hse_sample_times(uint64_t t_max, size_t target,
                                    int include_fibonacci, uint64_t* out,
                                    size_t* count) {
    return guarded([&] {
        require(count != nullptr, "hse_sample_times: count is NULL");
        const std::vector<uint64_t> times =
            default_sample_times(t_max, target, include_fibonacci != 0);
        if (out == nullptr || *count < times.size()) {
            *count = times.size();
            return HSE_ERR_BUFFER_TOO_SMALL;
        }
        std::memcpy(out, times.data(), times.size() * sizeof(uint64_t));
        *count = times.size();
        return HSE_OK;
    });
}

HSE_API hse_status hse_time_average(const hse_protocol* protocol,
                                    const hse_density* rho, uint64_t steps,
                                    hse_density* out) {
    return guarded([&] {
        require(protocol != nullptr && rho != nullptr && out != nullptr,
                "hse_time_average: NULL argument");
        *out = from_density(time_avg_channel(protocol->value, to_density(*rho), steps));
        return HSE_OK;
    });
}

HSE_API hse_status hse_dephase(char axis, const hse_density* rho, hse_density* out) {
    return guarded([&] {
        require(rho != nullptr && out != nullptr, "hse_dephase: NULL argument");
        PauliAxis pa;
        switch (axis) {
        case 'x':
            pa = PauliAxis::x;
            break;
        case 'y':
            pa = PauliAxis::y;
            break;
        case 'z':
            pa = PauliAxis::z;
            break;
        default:
            throw std::invalid_argument("hse_dephase: axis must be 'x', 'y' or 'z'");
        }
        *out = from_density(dephasing_channel(pa, to_density(*rho)));
        return HSE_OK;
    });
}

HSE_API hse_status hse_power_law_fit(const double* t, const double* y, size_t n,
                                     double* amplitude, double* exponent) {
    return guarded([&] {
        require(t != nullptr && y != nullptr && amplitude != nullptr &&
                    exponent != nullptr,
                "hse_power_law_fit: NULL argument");
        const PowerLawFit fit = fit_power_law(std::span<const double>(t, n),
                                              std::span<const double>(y, n));
        *amplitude = fit.amplitude;
        *exponent = fit.exponent;
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_expectations(const hse_density* rho,
                                         const hse_tomo_calibration* cal,
                                         hse_tomo_record* out) {
    return guarded([&] {
        require(rho != nullptr && cal != nullptr && out != nullptr,
                "hse_tomo_expectations: NULL argument");
        *out = from_record(pl_expectations(to_density(*rho), to_calibration(*cal)));
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_sample(const hse_tomo_record* record, uint64_t shots,
                                   uint64_t seed, uint64_t stream,
                                   hse_tomo_record* out) {
    return guarded([&] {
        require(record != nullptr && out != nullptr, "hse_tomo_sample: NULL argument");
        Rng rng = Rng::substream(seed, stream);
        *out = from_record(add_shot_noise(to_record(*record), shots, rng));
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_reconstruct(const hse_tomo_record* record,
                                        const hse_tomo_calibration* cal,
                                        hse_density* out) {
    return guarded([&] {
        require(record != nullptr && cal != nullptr && out != nullptr,
                "hse_tomo_reconstruct: NULL argument");
        const ReconstructedState s = reconstruct(to_record(*record), to_calibration(*cal));
        *out = hse_density{s.p0, s.alpha, s.beta};
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_depolarize(const hse_density* rho, double pe,
                                       hse_density* out) {
    return guarded([&] {
        require(rho != nullptr && out != nullptr, "hse_tomo_depolarize: NULL argument");
        *out = from_density(depolarize(to_density(*rho), pe));
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_correct(const hse_density* rho, double pe,
                                    hse_density* out) {
    return guarded([&] {
        require(rho != nullptr && out != nullptr, "hse_tomo_correct: NULL argument");
        const ReconstructedState in{rho->p0, 1.0 - rho->p0, rho->alpha, rho->beta};
        const ReconstructedState s = polarization_correct(in, pe);
        *out = hse_density{s.p0, s.alpha, s.beta};
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_purify(const hse_density* rho, hse_spinor* out,
                                   double* bloch_norm) {
    return guarded([&] {
        require(rho != nullptr && out != nullptr, "hse_tomo_purify: NULL argument");
        const ReconstructedState in{rho->p0, 1.0 - rho->p0, rho->alpha, rho->beta};
        const Purified p = purify(in);
        *out = from_spinor(p.state);
        if (bloch_norm != nullptr) {
            *bloch_norm = p.bloch_norm;
        }
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_write_records(const char* path,
                                          const hse_tomo_calibration* cal,
                                          uint64_t seed, const hse_tomo_step* steps,
                                          size_t count) {
    return guarded([&] {
        require(path != nullptr && cal != nullptr && (steps != nullptr || count == 0),
                "hse_tomo_write_records: NULL argument");
        RecordFile file;
        file.calibration = to_calibration(*cal);
        file.seed = seed;
        file.records.reserve(count);
        for (size_t i = 0; i < count; ++i) {
            file.records.emplace_back(steps[i].t, to_record(steps[i].record));
        }
        std::ofstream out(path);
        if (!out) {
            return fail(HSE_ERR_IO, ("cannot open for writing: " + std::string(path)).c_str());
        }
        write_record_file(out, file);
        out.flush();
        if (!out) {
            return fail(HSE_ERR_IO, ("write failed: " + std::string(path)).c_str());
        }
        return HSE_OK;
    });
}

HSE_API hse_status hse_tomo_read_records(const char* path, hse_tomo_calibration* cal,
                                         uint64_t* seed, hse_tomo_step* records,
                                         size_t capacity, size_t* count) {
    return guarded([&] {
        require(path != nullptr && cal != nullptr && seed != nullptr && count != nullptr,
                "hse_tomo_read_records: NULL argument");
        std::ifstream in(path);
        if (!in) {
            return fail(HSE_ERR_IO, ("cannot open for reading: " + std::string(path)).c_str());
        }
        const RecordFile file = read_record_file(in);
        cal->l0 = file.calibration.l0;
        cal->l1 = file.calibration.l1;
        cal->pe = file.calibration.pe;
        *seed = file.seed;
        if (records == nullptr || capacity < file.records.size()) {
            *count = file.records.size();
            return HSE_ERR_BUFFER_TOO_SMALL;
        }
        for (size_t i = 0; i < file.records.size(); ++i) {
            records[i] = hse_tomo_step{file.records[i].first,
                                       from_record(file.records[i].second)};
        }
        *count = file.records.size();
        return HSE_OK;
    });
}

} // extern "C"
