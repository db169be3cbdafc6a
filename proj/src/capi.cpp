#include "obce/obce.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "config.hpp"
#include "harness.hpp"
#include "measurement.hpp"

using namespace obce;

extern "C" {

struct obce_config {
    SystemConfig rep;
};

struct obce_report {
    NmseReport rep;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

obce_status fail(obce_status code, const std::string& msg) {
    g_last_error = msg;
    return code;
}

template <typename Fn>
obce_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return OBCE_OK;
    } catch (const std::invalid_argument& e) {
        return fail(OBCE_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        if (what.find("cannot open") != std::string::npos ||
            what.find("write failed") != std::string::npos)
            return fail(OBCE_ERR_IO, what);
        return fail(OBCE_ERR_NUMERICAL, what);
    } catch (const std::exception& e) {
        return fail(OBCE_ERR_INTERNAL, e.what());
    }
}

std::vector<Algorithm> algorithms_from_mask(uint32_t mask) {
    std::vector<Algorithm> algs;
    if (mask & OBCE_ALG_ONE_BIT_GAMP) algs.push_back(Algorithm::OneBitGamp);
    if (mask & OBCE_ALG_AWGN_GAMP) algs.push_back(Algorithm::AwgnGamp);
    if (mask & OBCE_ALG_LS_UNQUANTIZED) algs.push_back(Algorithm::LsUnquantized);
    if (algs.empty() || (mask & ~7u) != 0)
        throw std::invalid_argument("bad algorithm bitmask");
    return algs;
}

int alg_slot(Algorithm a) {
    switch (a) {
        case Algorithm::OneBitGamp: return 0;
        case Algorithm::AwgnGamp: return 1;
        case Algorithm::LsUnquantized: return 2;
    }
    return -1;
}

SweepAxis axis_from_c(obce_axis axis) {
    switch (axis) {
        case OBCE_AXIS_SNR_DB: return SweepAxis::SnrDb;
        case OBCE_AXIS_FRAMES: return SweepAxis::Frames;
        case OBCE_AXIS_RF_CHAINS: return SweepAxis::RfChains;
    }
    throw std::invalid_argument("bad sweep axis");
}

}  // namespace

extern "C" {

const char* obce_last_error(void) { return g_last_error.c_str(); }

const char* obce_version(void) { return "1.0.0"; }

obce_config* obce_config_new(void) { return new obce_config{}; }

void obce_config_free(obce_config* cfg) { delete cfg; }

obce_status obce_config_load(obce_config* cfg, const char* path) {
    if (!cfg || !path)
        return fail(OBCE_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { cfg->rep = load_config(path); });
}

obce_status obce_config_set(obce_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value)
        return fail(OBCE_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { set_config_field(cfg->rep, key, value); });
}

obce_status obce_trial_run(const obce_config* cfg, uint64_t seed,
                           uint32_t algorithms, double nmse_raw[3],
                           double nmse_scaled[3], const char* trace_csv_path) {
    if (!cfg || !nmse_raw)
        return fail(OBCE_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const auto algs = algorithms_from_mask(algorithms);
        const bool want_trace = trace_csv_path != nullptr;
        auto res = run_trial(cfg->rep, algs, seed, want_trace);
        for (int i = 0; i < 3; ++i) {
            nmse_raw[i] = std::numeric_limits<double>::quiet_NaN();
            if (nmse_scaled) nmse_scaled[i] = std::numeric_limits<double>::quiet_NaN();
        }
        std::vector<std::pair<std::string, std::vector<IterDiag>>> traces;
        for (const auto& [alg, tr] : res) {
            nmse_raw[alg_slot(alg)] = tr.nmse_raw;
            if (nmse_scaled) nmse_scaled[alg_slot(alg)] = tr.nmse_scaled;
            if (want_trace && !tr.trace.empty())
                traces.emplace_back(algorithm_name(alg), tr.trace);
        }
        if (want_trace) write_trace_csv(trace_csv_path, traces);
    });
}

obce_status obce_sweep_run(const obce_config* cfg, obce_axis axis,
                           const double* values, size_t n_values,
                           uint32_t algorithms, uint32_t trials,
                           uint64_t seed_base, obce_report** out) {
    if (!cfg || !values || n_values == 0 || !out)
        return fail(OBCE_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    return guarded([&] {
        SweepSpec spec;
        spec.base = cfg->rep;
        spec.axis = axis_from_c(axis);
        spec.values.assign(values, values + n_values);
        spec.algorithms = algorithms_from_mask(algorithms);
        spec.trials = static_cast<int>(trials);
        spec.seed_base = seed_base;
        auto report = std::make_unique<obce_report>();
        report->rep = run_sweep(spec);
        *out = report.release();
    });
}

size_t obce_report_rows(const obce_report* report) {
    return report ? report->rep.rows.size() : 0;
}

obce_status obce_report_get_row(const obce_report* report, size_t index,
                            obce_report_row* out) {
    if (!report || !out)
        return fail(OBCE_ERR_INVALID_ARGUMENT, "null argument");
    if (index >= report->rep.rows.size())
        return fail(OBCE_ERR_INVALID_ARGUMENT, "row index out of range");
    const ReportRow& r = report->rep.rows[index];
    out->axis_value = r.axis_value;
    out->algorithm = algorithm_name(r.algorithm);
    out->mean_nmse = r.mean_nmse;
    out->median_nmse = r.median_nmse;
    out->stderr_nmse = r.stderr_nmse;
    out->trials = static_cast<uint32_t>(r.trials);
    out->seed_lo = r.seed_lo;
    out->seed_hi = r.seed_hi;
    out->failed = r.failed ? 1 : 0;
    g_last_error.clear();
    return OBCE_OK;
}

obce_status obce_report_write_csv(const obce_report* report, const char* path) {
    if (!report || !path)
        return fail(OBCE_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] { emit_report(report->rep, path); });
}

void obce_report_free(obce_report* report) { delete report; }

obce_status obce_dump_measurement(const obce_config* cfg, uint64_t seed,
                                  const char* path) {
    if (!cfg || !path)
        return fail(OBCE_ERR_INVALID_ARGUMENT, "null argument");
    return guarded([&] {
        const SystemConfig& c = cfg->rep;
        c.validate();
        Rng rng(seed);
        const PathSet paths = generate_paths(c, rng);
        const ChannelRealization chan = assemble_channel(c, paths);
        std::vector<FrameHardware> frames;
        for (int m = 0; m < c.n_frames; ++m)
            frames.push_back(generate_frame_hardware(c, rng, m));
        const MeasurementEnsemble ens = assemble_ensemble(c, frames, chan, rng);
        const CVec h_v = Eigen::Map<const CVec>(chan.h_virtual.data(),
                                                c.n_tx * c.n_rx);
        dump_ensemble(path, ens, real_lift(h_v));
    });
}

}  // extern "C"
