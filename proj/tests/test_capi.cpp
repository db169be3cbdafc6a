#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "obce/obce.h"

namespace {

void set_toy_scenario(obce_config* cfg) {
    REQUIRE(obce_config_set(cfg, "n_tx", "4") == OBCE_OK);
    REQUIRE(obce_config_set(cfg, "n_rx", "2") == OBCE_OK);
    REQUIRE(obce_config_set(cfg, "l_tx", "1") == OBCE_OK);
    REQUIRE(obce_config_set(cfg, "l_rx", "1") == OBCE_OK);
    REQUIRE(obce_config_set(cfg, "n_streams", "1") == OBCE_OK);
    REQUIRE(obce_config_set(cfg, "n_paths", "1") == OBCE_OK);
    REQUIRE(obce_config_set(cfg, "n_frames", "8") == OBCE_OK);
    REQUIRE(obce_config_set(cfg, "gamp_iters", "25") == OBCE_OK);
}

}  // namespace

TEST_CASE("config lifecycle and validation errors") {
    obce_config* cfg = obce_config_new();
    REQUIRE(cfg != nullptr);
    CHECK(obce_config_set(cfg, "n_tx", "16") == OBCE_OK);
    CHECK(obce_config_set(cfg, "bogus", "1") == OBCE_ERR_INVALID_ARGUMENT);
    CHECK(std::string(obce_last_error()).find("bogus") != std::string::npos);
    CHECK(obce_config_set(nullptr, "n_tx", "1") == OBCE_ERR_INVALID_ARGUMENT);
    CHECK(obce_config_load(cfg, "does_not_exist.cfg") == OBCE_ERR_IO);
    obce_config_free(cfg);
    obce_config_free(nullptr);  // no-op
}

TEST_CASE("trial through the C API") {
    obce_config* cfg = obce_config_new();
    set_toy_scenario(cfg);

    double raw[3], scaled[3];
    const uint32_t all =
        OBCE_ALG_ONE_BIT_GAMP | OBCE_ALG_AWGN_GAMP | OBCE_ALG_LS_UNQUANTIZED;
    REQUIRE(obce_trial_run(cfg, 42, all, raw, scaled, nullptr) == OBCE_OK);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::isfinite(raw[i]));
        CHECK(raw[i] >= 0.0);
        CHECK(std::isfinite(scaled[i]));
    }

    // Determinism across calls.
    double raw2[3];
    REQUIRE(obce_trial_run(cfg, 42, all, raw2, nullptr, nullptr) == OBCE_OK);
    for (int i = 0; i < 3; ++i) CHECK(raw[i] == raw2[i]);

    // Subset selection leaves unselected slots NaN.
    double sub[3];
    REQUIRE(obce_trial_run(cfg, 42, OBCE_ALG_ONE_BIT_GAMP, sub, nullptr, nullptr) ==
            OBCE_OK);
    CHECK(sub[0] == raw[0]);
    CHECK(std::isnan(sub[1]));
    CHECK(std::isnan(sub[2]));

    CHECK(obce_trial_run(cfg, 1, 0, raw, nullptr, nullptr) ==
          OBCE_ERR_INVALID_ARGUMENT);
    CHECK(obce_trial_run(cfg, 1, 1u << 7, raw, nullptr, nullptr) ==
          OBCE_ERR_INVALID_ARGUMENT);
    obce_config_free(cfg);
}

TEST_CASE("trial diagnostics trace lands on disk") {
    obce_config* cfg = obce_config_new();
    set_toy_scenario(cfg);
    double raw[3];
    const std::string path = "capi_trace.csv";
    REQUIRE(obce_trial_run(cfg, 3, OBCE_ALG_ONE_BIT_GAMP, raw, nullptr,
                           path.c_str()) == OBCE_OK);
    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "algorithm,iter,delta,nmse_proxy");
    std::string first;
    REQUIRE(std::getline(in, first));
    CHECK(first.rfind("one_bit_gamp,1,", 0) == 0);
    std::remove(path.c_str());
    obce_config_free(cfg);
}

TEST_CASE("sweep and report through the C API") {
    obce_config* cfg = obce_config_new();
    set_toy_scenario(cfg);

    const double values[2] = {-10.0, 0.0};
    obce_report* report = nullptr;
    REQUIRE(obce_sweep_run(cfg, OBCE_AXIS_SNR_DB, values, 2,
                           OBCE_ALG_ONE_BIT_GAMP | OBCE_ALG_LS_UNQUANTIZED, 2, 9,
                           &report) == OBCE_OK);
    REQUIRE(report != nullptr);
    REQUIRE(obce_report_rows(report) == 4);

    obce_report_row row;
    REQUIRE(obce_report_get_row(report, 0, &row) == OBCE_OK);
    CHECK(row.axis_value == -10.0);
    CHECK(std::string(row.algorithm) == "ls_unquantized");
    CHECK(row.trials == 2);
    CHECK(row.seed_lo == 9);
    CHECK(row.seed_hi == 10);
    CHECK(row.failed == 0);
    CHECK(obce_report_get_row(report, 99, &row) == OBCE_ERR_INVALID_ARGUMENT);

    const std::string path = "capi_report.csv";
    REQUIRE(obce_report_write_csv(report, path.c_str()) == OBCE_OK);
    std::ifstream in(path);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header ==
          "axis,value,algorithm,mean_nmse,median_nmse,stderr,trials,seed_lo,seed_hi");
    int data_rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++data_rows;
    CHECK(data_rows == 4);
    std::remove(path.c_str());

    obce_report_free(report);
    obce_config_free(cfg);
}

TEST_CASE("measurement dump through the C API") {
    obce_config* cfg = obce_config_new();
    set_toy_scenario(cfg);
    const std::string path = "capi_dump.bin";
    REQUIRE(obce_dump_measurement(cfg, 4, path.c_str()) == OBCE_OK);
    std::ifstream in(path, std::ios::binary);
    int64_t header[4];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    REQUIRE(in.good());
    CHECK(header[0] == 16);  // 2 * n_frames * l_rx
    CHECK(header[1] == 16);  // 2 * n_tx * n_rx
    CHECK(header[2] == 16);
    CHECK(header[3] == 16);
    std::remove(path.c_str());
    CHECK(obce_dump_measurement(cfg, 4, "/nonexistent_dir/x.bin") == OBCE_ERR_IO);
    obce_config_free(cfg);
}

TEST_CASE("version string is present") {
    CHECK(std::string(obce_version()).size() > 0);
}
