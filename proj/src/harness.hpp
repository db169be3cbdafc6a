#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "config.hpp"
#include "gamp.hpp"

namespace obce {

enum class Algorithm { OneBitGamp, AwgnGamp, LsUnquantized };
enum class SweepAxis { SnrDb, Frames, RfChains };

// Stable names used in CSV output and on the CLI.
const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);
const char* axis_name(SweepAxis a);
SweepAxis axis_from_name(const std::string& name);

struct TrialResult {
    double nmse_raw;
    double nmse_scaled;  // min over scalar c of ||H - c*Hhat||^2 / ||H||^2
    std::vector<IterDiag> trace;  // empty for LS
};

/// One Monte Carlo realization; all requested algorithms see the same
/// channel, hardware, and noise.
std::map<Algorithm, TrialResult> run_trial(const SystemConfig& cfg,
                                           const std::vector<Algorithm>& algorithms,
                                           std::uint64_t trial_seed,
                                           bool with_trace = false);

struct SweepSpec {
    SystemConfig base;
    SweepAxis axis = SweepAxis::SnrDb;
    std::vector<double> values;
    std::vector<Algorithm> algorithms;
    int trials = 200;
    std::uint64_t seed_base = 1;

    void validate() const;
};

struct ReportRow {
    double axis_value;
    Algorithm algorithm;
    double mean_nmse;
    double median_nmse;
    double stderr_nmse;
    int trials;
    std::uint64_t seed_lo;
    std::uint64_t seed_hi;
    bool failed = false;  // >1% of trials aborted
};

struct NmseReport {
    SweepAxis axis;
    std::vector<ReportRow> rows;
};

// Applies one axis value on top of the base config.
SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value);

// Raw per-trial NMSE values for a fixed config, seeds seed_base + i.
std::map<Algorithm, std::vector<double>> run_trials(
    const SystemConfig& cfg, const std::vector<Algorithm>& algorithms,
    std::uint64_t seed_base, int trials);

NmseReport run_sweep(const SweepSpec& spec);

// CSV: axis,value,algorithm,mean_nmse,median_nmse,stderr,trials,seed_lo,seed_hi
void emit_report(const NmseReport& report, const std::string& path);

}  // namespace obce
