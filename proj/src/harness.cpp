#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "measurement.hpp"

namespace obce {

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::OneBitGamp: return "one_bit_gamp";
        case Algorithm::AwgnGamp: return "awgn_gamp";
        case Algorithm::LsUnquantized: return "ls_unquantized";
    }
    throw std::invalid_argument("algorithm_name: bad enum value");
}

Algorithm algorithm_from_name(const std::string& name) {
    if (name == "one_bit_gamp" || name == "onebit") return Algorithm::OneBitGamp;
    if (name == "awgn_gamp" || name == "awgn") return Algorithm::AwgnGamp;
    if (name == "ls_unquantized" || name == "ls") return Algorithm::LsUnquantized;
    throw std::invalid_argument("unknown algorithm: " + name);
}

const char* axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::SnrDb: return "snr";
        case SweepAxis::Frames: return "frames";
        case SweepAxis::RfChains: return "rfchains";
    }
    throw std::invalid_argument("axis_name: bad enum value");
}

SweepAxis axis_from_name(const std::string& name) {
    if (name == "snr") return SweepAxis::SnrDb;
    if (name == "frames") return SweepAxis::Frames;
    if (name == "rfchains") return SweepAxis::RfChains;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

void SweepSpec::validate() const {
    base.validate();
    if (values.empty()) throw std::invalid_argument("SweepSpec: values empty");
    for (size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw std::invalid_argument("SweepSpec: values must be strictly increasing");
    if (algorithms.empty()) throw std::invalid_argument("SweepSpec: no algorithms");
    if (trials < 1) throw std::invalid_argument("SweepSpec: trials must be >= 1");
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
    SystemConfig cfg = base;
    switch (axis) {
        case SweepAxis::SnrDb:
            cfg.snr_db = value;
            break;
        case SweepAxis::Frames:
            cfg.n_frames = static_cast<int>(value);
            break;
        case SweepAxis::RfChains:
            cfg.l_tx = cfg.l_rx = static_cast<int>(value);
            cfg.n_streams = std::min(cfg.n_streams, static_cast<int>(value));
            break;
    }
    cfg.validate();
    return cfg;
}

namespace {

// Genie Bernoulli-Gaussian prior matched to the channel statistics:
// n_paths active complex bins out of n_tx*n_rx, total energy n_tx*n_rx.
SparsePrior matched_prior(const SystemConfig& cfg) {
    const double n = static_cast<double>(cfg.n_tx) * cfg.n_rx;
    SparsePrior prior;
    prior.sparsity = cfg.n_paths / n;
    prior.active_var = n / (2.0 * cfg.n_paths);
    prior.mean = 0.0;
    return prior;
}

// Antenna-domain estimate from a real-lifted virtual-domain vector.
CMat to_antenna_domain(const SystemConfig& cfg, const CVec& h_v_tilde,
                       const CMat& ut, const CMat& ur) {
    const CMat h_v = Eigen::Map<const CMat>(h_v_tilde.data(), cfg.n_rx, cfg.n_tx);
    return ur * h_v * ut.adjoint();
}

TrialResult score(const CMat& h_true, const CMat& h_est) {
    TrialResult t;
    t.nmse_raw = nmse(h_true, h_est);
    const double e2 = h_est.squaredNorm();
    if (e2 > 0.0) {
        // argmin_c ||H - c*Hhat||_F, complex scalar
        const std::complex<double> c = (h_est.conjugate().cwiseProduct(h_true)).sum() / e2;
        t.nmse_scaled = nmse(h_true, CMat(c * h_est));
    } else {
        t.nmse_scaled = 1.0;
    }
    return t;
}

}  // namespace

std::map<Algorithm, TrialResult> run_trial(const SystemConfig& cfg,
                                           const std::vector<Algorithm>& algorithms,
                                           std::uint64_t trial_seed,
                                           bool with_trace) {
    cfg.validate();
    if (algorithms.empty()) throw std::invalid_argument("run_trial: no algorithms");

    Rng rng(trial_seed);
    const PathSet paths = generate_paths(cfg, rng);
    const ChannelRealization chan = assemble_channel(cfg, paths);
    std::vector<FrameHardware> frames;
    frames.reserve(cfg.n_frames);
    for (int m = 0; m < cfg.n_frames; ++m)
        frames.push_back(generate_frame_hardware(cfg, rng, m));
    const MeasurementEnsemble ens = assemble_ensemble(cfg, frames, chan, rng);

    const CMat ut = dft_matrix(cfg.n_tx);
    const CMat ur = dft_matrix(cfg.n_rx);
    const SparsePrior prior = matched_prior(cfg);
    const double noise_var_real = cfg.noise_var / 2.0;
    GampOptions opts{cfg.gamp_iters, cfg.damping, 1e-6};

    const int nv = cfg.n_tx * cfg.n_rx;
    const CVec h_v_true = Eigen::Map<const CVec>(chan.h_virtual.data(), nv);
    const Vec h_v_true_real = real_lift(h_v_true);
    const Vec* truth = with_trace ? &h_v_true_real : nullptr;

    std::map<Algorithm, TrialResult> out;
    for (Algorithm alg : algorithms) {
        switch (alg) {
            case Algorithm::OneBitGamp: {
                GampResult r = one_bit_gamp(ens.w_real, ens.y_sign, prior,
                                            noise_var_real, opts, truth);
                TrialResult t =
                    score(chan.h, to_antenna_domain(cfg, complexify(r.h_hat), ut, ur));
                t.trace = std::move(r.trace);
                out.emplace(alg, std::move(t));
                break;
            }
            case Algorithm::AwgnGamp: {
                GampResult r = awgn_gamp(ens.w_real, ens.y_sign, prior,
                                         noise_var_real, opts, truth);
                TrialResult t =
                    score(chan.h, to_antenna_domain(cfg, complexify(r.h_hat), ut, ur));
                t.trace = std::move(r.trace);
                out.emplace(alg, std::move(t));
                break;
            }
            case Algorithm::LsUnquantized: {
                const CVec r_tilde = complexify(ens.r_noisy);
                const CVec h_v_est = ls_estimate(ens.w_complex, r_tilde);
                out.emplace(alg, score(chan.h, to_antenna_domain(cfg, h_v_est, ut, ur)));
                break;
            }
        }
    }
    return out;
}

std::map<Algorithm, std::vector<double>> run_trials(
    const SystemConfig& cfg, const std::vector<Algorithm>& algorithms,
    std::uint64_t seed_base, int trials) {
    std::map<Algorithm, std::vector<double>> out;
    for (Algorithm a : algorithms)
        out[a].resize(trials, std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < trials; ++i) {
        auto res = run_trial(cfg, algorithms, seed_base + i);
        for (Algorithm a : algorithms) out[a][i] = res.at(a).nmse_raw;
    }
    return out;
}

namespace {

struct Stats {
    double mean, median, stderr_;
    int aborted;
};

Stats summarize(std::vector<double> v) {
    Stats s{0.0, 0.0, 0.0, 0};
    std::vector<double> ok;
    ok.reserve(v.size());
    for (double x : v) {
        if (std::isnan(x)) ++s.aborted;
        else ok.push_back(x);
    }
    if (ok.empty()) {
        s.mean = s.median = s.stderr_ = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    double sum = 0.0;
    for (double x : ok) sum += x;
    s.mean = sum / ok.size();
    double ss = 0.0;
    for (double x : ok) ss += (x - s.mean) * (x - s.mean);
    s.stderr_ = ok.size() > 1
                    ? std::sqrt(ss / (ok.size() - 1) / ok.size())
                    : 0.0;
    std::sort(ok.begin(), ok.end());
    const size_t n = ok.size();
    s.median = n % 2 ? ok[n / 2] : 0.5 * (ok[n / 2 - 1] + ok[n / 2]);
    return s;
}

}  // namespace

NmseReport run_sweep(const SweepSpec& spec) {
    spec.validate();
    NmseReport report;
    report.axis = spec.axis;

    // Deterministic row order: axis value, then algorithm name.
    std::vector<Algorithm> algs = spec.algorithms;
    std::sort(algs.begin(), algs.end(), [](Algorithm a, Algorithm b) {
        return std::string(algorithm_name(a)) < algorithm_name(b);
    });

    for (double value : spec.values) {
        const SystemConfig cfg = apply_axis(spec.base, spec.axis, value);
        std::map<Algorithm, std::vector<double>> nmses;
        for (Algorithm a : algs)
            nmses[a].resize(spec.trials, std::numeric_limits<double>::quiet_NaN());
        for (int i = 0; i < spec.trials; ++i) {
            try {
                auto res = run_trial(cfg, algs, spec.seed_base + i);
                for (Algorithm a : algs) nmses[a][i] = res.at(a).nmse_raw;
            } catch (const std::exception&) {
                // Leave NaN; the row is marked failed past the abort budget.
            }
        }
        for (Algorithm a : algs) {
            const Stats st = summarize(nmses[a]);
            ReportRow row;
            row.axis_value = value;
            row.algorithm = a;
            row.trials = spec.trials;
            row.seed_lo = spec.seed_base;
            row.seed_hi = spec.seed_base + spec.trials - 1;
            row.failed = st.aborted * 100 > spec.trials;  // >1% aborted
            if (row.failed) {
                row.mean_nmse = row.median_nmse = row.stderr_nmse =
                    std::numeric_limits<double>::quiet_NaN();
            } else {
                row.mean_nmse = st.mean;
                row.median_nmse = st.median;
                row.stderr_nmse = st.stderr_;
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

void emit_report(const NmseReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path);
    out << "axis,value,algorithm,mean_nmse,median_nmse,stderr,trials,seed_lo,seed_hi\n";
    char buf[256];
    for (const ReportRow& r : report.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.12g,%s,%.12g,%.12g,%.12g,%d,%llu,%llu\n",
                      axis_name(report.axis), r.axis_value,
                      algorithm_name(r.algorithm), r.mean_nmse, r.median_nmse,
                      r.stderr_nmse, r.trials,
                      static_cast<unsigned long long>(r.seed_lo),
                      static_cast<unsigned long long>(r.seed_hi));
        out << buf;
    }
    if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

}  // namespace obce
