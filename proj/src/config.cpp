#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace obce {

double SystemConfig::rho() const {
    // rho is the received power aggregated over the N_r-element array; the
    // SNR knob is referenced to the per-component noise floor of the
    // real-lifted model (noise_var / 2 per real component).
    return 2.0 * n_rx * noise_var * std::pow(10.0, snr_db / 10.0);
}

void SystemConfig::validate() const {
    auto fail = [](const std::string& msg) {
        throw std::invalid_argument("SystemConfig: " + msg);
    };
    if (n_tx < 1 || n_rx < 1 || l_tx < 1 || l_rx < 1 || n_streams < 1 ||
        n_paths < 1 || n_frames < 1 || gamp_iters < 1)
        fail("all counts must be >= 1");
    if (l_tx > n_tx) fail("l_tx must not exceed n_tx");
    if (l_rx > n_rx) fail("l_rx must not exceed n_rx");
    if (n_streams > std::min(l_tx, l_rx))
        fail("n_streams must not exceed min(l_tx, l_rx)");
    if (!(noise_var > 0.0)) fail("noise_var must be positive");
    if (!(path_gain_var > 0.0)) fail("path_gain_var must be positive");
    if (grid_mode == GridMode::OnGrid &&
        (n_paths > n_tx || n_paths > n_rx))
        fail("OnGrid mode needs n_paths <= min(n_tx, n_rx) for distinct bins");
    if (!(damping > 0.0 && damping <= 1.0))
        fail("damping must lie in (0, 1]");
    if (!std::isfinite(snr_db)) fail("snr_db must be finite");
}

namespace {

int parse_int(const std::string& key, const std::string& v) {
    size_t pos = 0;
    int x = std::stoi(v, &pos);
    if (pos != v.size())
        throw std::invalid_argument("config: bad integer for " + key + ": " + v);
    return x;
}

double parse_double(const std::string& key, const std::string& v) {
    size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size())
        throw std::invalid_argument("config: bad number for " + key + ": " + v);
    return x;
}

}  // namespace

void set_config_field(SystemConfig& cfg, const std::string& key,
                      const std::string& value) {
    if (key == "n_tx") cfg.n_tx = parse_int(key, value);
    else if (key == "n_rx") cfg.n_rx = parse_int(key, value);
    else if (key == "l_tx") cfg.l_tx = parse_int(key, value);
    else if (key == "l_rx") cfg.l_rx = parse_int(key, value);
    else if (key == "n_streams") cfg.n_streams = parse_int(key, value);
    else if (key == "n_paths") cfg.n_paths = parse_int(key, value);
    else if (key == "n_frames") cfg.n_frames = parse_int(key, value);
    else if (key == "snr_db") cfg.snr_db = parse_double(key, value);
    else if (key == "noise_var") cfg.noise_var = parse_double(key, value);
    else if (key == "gamp_iters") cfg.gamp_iters = parse_int(key, value);
    else if (key == "rng_seed") cfg.rng_seed = std::stoull(value);
    else if (key == "damping") cfg.damping = parse_double(key, value);
    else if (key == "path_gain_var") cfg.path_gain_var = parse_double(key, value);
    else if (key == "grid_mode") {
        if (value == "on_grid" || value == "OnGrid") cfg.grid_mode = GridMode::OnGrid;
        else if (value == "off_grid" || value == "OffGrid") cfg.grid_mode = GridMode::OffGrid;
        else throw std::invalid_argument("config: grid_mode must be on_grid or off_grid");
    } else {
        throw std::invalid_argument("config: unknown key: " + key);
    }
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    SystemConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), '=', ' ');
        std::string key, value;
        std::istringstream ls(line);
        if (!(ls >> key)) continue;  // blank line
        if (!(ls >> value))
            throw std::invalid_argument("config: missing value at line " +
                                        std::to_string(lineno));
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("config: trailing tokens at line " +
                                        std::to_string(lineno));
        set_config_field(cfg, key, value);
    }
    cfg.validate();
    return cfg;
}

}  // namespace obce
