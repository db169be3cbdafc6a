#pragma once

#include <cstdint>
#include <string>

namespace obce {

enum class GridMode { OnGrid, OffGrid };

/// Scenario parameters for one simulated link. Field names match the
/// flat key/value config file accepted by the CLI.
struct SystemConfig {
    int n_tx = 64;        // transmit antennas
    int n_rx = 16;        // receive antennas
    int l_tx = 4;         // transmit RF chains
    int l_rx = 4;         // receive RF chains
    int n_streams = 4;    // data streams
    int n_paths = 2;      // propagation paths
    int n_frames = 64;    // training frames
    double snr_db = 0.0;  // 10*log10(rho / (2 * n_rx * noise_var))
    double noise_var = 1.0;
    int gamp_iters = 100;
    std::uint64_t rng_seed = 1;
    GridMode grid_mode = GridMode::OffGrid;
    double path_gain_var = 1.0;
    double damping = 0.5;  // solver damping factor, 1.0 = off

    // Average received power implied by the SNR definition.
    double rho() const;

    // Throws std::invalid_argument on any violated constraint.
    void validate() const;
};

// Parses a flat key/value text file ("key = value" or "key value",
// '#' starts a comment). Unknown keys are an error.
SystemConfig load_config(const std::string& path);

// Sets a single field by its config-file key.
void set_config_field(SystemConfig& cfg, const std::string& key,
                      const std::string& value);

}  // namespace obce
