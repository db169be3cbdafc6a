#include "channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace obce {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

CVec array_response(double theta, int n) {
    if (n < 1) throw std::invalid_argument("array_response: n must be >= 1");
    CVec a(n);
    const double step = kPi * std::sin(theta);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int j = 0; j < n; ++j)
        a(j) = std::polar(scale, step * j);
    return a;
}

CMat dft_matrix(int n) {
    CMat u(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j)
            u(j, k) = std::polar(scale, kTwoPi * j * k / n);
    return u;
}

namespace {

// Angle whose steering vector coincides with DFT column k of size n:
// sin(theta) = 2k/n folded into [-1, 1), result mapped into [0, 2pi).
double bin_angle(int k, int n) {
    double u = 2.0 * k / n;
    if (u >= 1.0) u -= 2.0;
    double theta = std::asin(u);
    if (theta < 0.0) theta += kTwoPi;
    return theta;
}

// Distinct bin indices from {0, ..., n-1}, drawn by rejection.
std::vector<int> draw_distinct_bins(int count, int n, Rng& rng) {
    std::uniform_int_distribution<int> bin(0, n - 1);
    std::vector<int> out;
    out.reserve(count);
    while (static_cast<int>(out.size()) < count) {
        int k = bin(rng);
        bool seen = false;
        for (int b : out) seen = seen || (b == k);
        if (!seen) out.push_back(k);
    }
    return out;
}

}  // namespace

PathSet generate_paths(const SystemConfig& cfg, Rng& rng) {
    PathSet p;
    p.aod.resize(cfg.n_paths);
    p.aoa.resize(cfg.n_paths);
    p.gains.resize(cfg.n_paths);

    if (cfg.grid_mode == GridMode::OffGrid) {
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        for (int l = 0; l < cfg.n_paths; ++l) p.aod[l] = angle(rng);
        for (int l = 0; l < cfg.n_paths; ++l) p.aoa[l] = angle(rng);
    } else {
        auto tx_bins = draw_distinct_bins(cfg.n_paths, cfg.n_tx, rng);
        auto rx_bins = draw_distinct_bins(cfg.n_paths, cfg.n_rx, rng);
        for (int l = 0; l < cfg.n_paths; ++l) p.aod[l] = bin_angle(tx_bins[l], cfg.n_tx);
        for (int l = 0; l < cfg.n_paths; ++l) p.aoa[l] = bin_angle(rx_bins[l], cfg.n_rx);
    }

    const double comp_sd = std::sqrt(cfg.path_gain_var / 2.0);
    std::normal_distribution<double> gauss(0.0, comp_sd);
    for (int l = 0; l < cfg.n_paths; ++l) {
        double re = gauss(rng);
        double im = gauss(rng);
        p.gains[l] = {re, im};
    }
    return p;
}

ChannelRealization assemble_channel(const SystemConfig& cfg, const PathSet& paths) {
    const auto np = static_cast<int>(paths.gains.size());
    if (np != cfg.n_paths || paths.aod.size() != paths.gains.size() ||
        paths.aoa.size() != paths.gains.size())
        throw std::invalid_argument("assemble_channel: path set inconsistent with config");

    ChannelRealization out;
    out.paths = paths;
    out.h = CMat::Zero(cfg.n_rx, cfg.n_tx);
    const double scale = std::sqrt(static_cast<double>(cfg.n_rx) * cfg.n_tx / cfg.n_paths);
    for (int l = 0; l < np; ++l) {
        CVec ar = array_response(paths.aoa[l], cfg.n_rx);
        CVec at = array_response(paths.aod[l], cfg.n_tx);
        out.h.noalias() += (scale * paths.gains[l]) * (ar * at.adjoint());
    }
    const CMat ut = dft_matrix(cfg.n_tx);
    const CMat ur = dft_matrix(cfg.n_rx);
    out.h_virtual = ur.adjoint() * out.h * ut;
    return out;
}

int virtual_support_size(const CMat& h_virtual, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("virtual_support_size: tol must be > 0");
    int count = 0;
    for (Eigen::Index c = 0; c < h_virtual.cols(); ++c)
        for (Eigen::Index r = 0; r < h_virtual.rows(); ++r)
            if (std::abs(h_virtual(r, c)) > tol) ++count;
    return count;
}

}  // namespace obce
