// estimate - one-bit GAMP channel estimation benchmark CLI.
//
// Subcommands:
//   trial  run one Monte Carlo trial and print per-algorithm NMSE
//   sweep  run an NMSE sweep over SNR / frames / RF chains, emit CSV
//   dump   write the binary measurement dump for one realization

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "obce/obce.h"

namespace {

struct ConfigDeleter {
    void operator()(obce_config* c) const { obce_config_free(c); }
};
struct ReportDeleter {
    void operator()(obce_report* r) const { obce_report_free(r); }
};

using ConfigPtr = std::unique_ptr<obce_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<obce_report, ReportDeleter>;

[[noreturn]] void die(const std::string& context) {
    std::fprintf(stderr, "estimate: %s: %s\n", context.c_str(), obce_last_error());
    std::exit(1);
}

ConfigPtr make_config(const std::string& config_path) {
    ConfigPtr cfg(obce_config_new());
    if (!config_path.empty() &&
        obce_config_load(cfg.get(), config_path.c_str()) != OBCE_OK)
        die("loading config " + config_path);
    return cfg;
}

uint32_t parse_algorithms(const std::vector<std::string>& names) {
    if (names.empty())
        return OBCE_ALG_ONE_BIT_GAMP | OBCE_ALG_AWGN_GAMP | OBCE_ALG_LS_UNQUANTIZED;
    uint32_t mask = 0;
    for (const auto& n : names) {
        if (n == "one_bit_gamp" || n == "onebit") mask |= OBCE_ALG_ONE_BIT_GAMP;
        else if (n == "awgn_gamp" || n == "awgn") mask |= OBCE_ALG_AWGN_GAMP;
        else if (n == "ls_unquantized" || n == "ls") mask |= OBCE_ALG_LS_UNQUANTIZED;
        else {
            std::fprintf(stderr, "estimate: unknown algorithm '%s'\n", n.c_str());
            std::exit(1);
        }
    }
    return mask;
}

const char* kAlgNames[3] = {"one_bit_gamp", "awgn_gamp", "ls_unquantized"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"One-bit GAMP mmWave channel estimation benchmark"};
    app.require_subcommand(1);

    std::string config_path;
    uint64_t seed = 1;

    auto* trial = app.add_subcommand("trial", "Run a single trial");
    trial->add_option("--config", config_path, "Config file (key value lines)");
    trial->add_option("--seed", seed, "Trial seed");
    std::vector<std::string> trial_algs;
    trial->add_option("--algorithms", trial_algs,
                      "Algorithms: one_bit_gamp awgn_gamp ls_unquantized")
        ->delimiter(',');
    std::string trace_path;
    trial->add_option("--trace", trace_path, "Write per-iteration diagnostics CSV");

    auto* sweep = app.add_subcommand("sweep", "Run an NMSE sweep");
    sweep->add_option("--config", config_path, "Config file (key value lines)");
    std::string axis = "snr";
    sweep->add_option("--axis", axis, "Sweep axis: snr | frames | rfchains")
        ->check(CLI::IsMember({"snr", "frames", "rfchains"}));
    std::vector<double> values;
    sweep->add_option("--values", values, "Axis values, strictly increasing")
        ->required()
        ->delimiter(',');
    std::vector<std::string> sweep_algs;
    sweep->add_option("--algorithms", sweep_algs,
                      "Algorithms: one_bit_gamp awgn_gamp ls_unquantized")
        ->delimiter(',');
    int trials = 200;
    sweep->add_option("--trials", trials, "Trials per axis value");
    sweep->add_option("--seed", seed, "Base seed; trial i uses seed + i");
    std::string out_path;
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    auto* dump = app.add_subcommand("dump", "Write a binary measurement dump");
    dump->add_option("--config", config_path, "Config file (key value lines)");
    dump->add_option("--seed", seed, "Realization seed");
    std::string dump_path;
    dump->add_option("--out", dump_path, "Output file")->required();

    CLI11_PARSE(app, argc, argv);

    if (trial->parsed()) {
        ConfigPtr cfg = make_config(config_path);
        double raw[3], scaled[3];
        const uint32_t mask = parse_algorithms(trial_algs);
        if (obce_trial_run(cfg.get(), seed, mask, raw, scaled,
                           trace_path.empty() ? nullptr : trace_path.c_str()) !=
            OBCE_OK)
            die("trial");
        std::printf("algorithm,nmse,nmse_scaled\n");
        for (int i = 0; i < 3; ++i)
            if (!std::isnan(raw[i]))
                std::printf("%s,%.12g,%.12g\n", kAlgNames[i], raw[i], scaled[i]);
        return 0;
    }

    if (sweep->parsed()) {
        ConfigPtr cfg = make_config(config_path);
        obce_axis ax = axis == "snr" ? OBCE_AXIS_SNR_DB
                       : axis == "frames" ? OBCE_AXIS_FRAMES
                                          : OBCE_AXIS_RF_CHAINS;
        obce_report* raw_report = nullptr;
        if (obce_sweep_run(cfg.get(), ax, values.data(), values.size(),
                           parse_algorithms(sweep_algs),
                           static_cast<uint32_t>(trials), seed,
                           &raw_report) != OBCE_OK)
            die("sweep");
        ReportPtr report(raw_report);
        if (obce_report_write_csv(report.get(), out_path.c_str()) != OBCE_OK)
            die("writing " + out_path);
        std::printf("wrote %zu rows to %s\n", obce_report_rows(report.get()),
                    out_path.c_str());
        return 0;
    }

    if (dump->parsed()) {
        ConfigPtr cfg = make_config(config_path);
        if (obce_dump_measurement(cfg.get(), seed, dump_path.c_str()) != OBCE_OK)
            die("dump");
        return 0;
    }
    return 1;
}
