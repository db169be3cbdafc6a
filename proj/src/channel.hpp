#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

#include "config.hpp"

namespace obce {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// Per-path angles of departure/arrival and complex gains.
struct PathSet {
    std::vector<double> aod;
    std::vector<double> aoa;
    std::vector<std::complex<double>> gains;
};

/// A channel draw together with its angular-domain image.
struct ChannelRealization {
    CMat h;          // n_rx x n_tx
    CMat h_virtual;  // n_rx x n_tx, h = U_r * h_virtual * U_t^H
    PathSet paths;
};

// ULA steering vector with half-wavelength spacing:
// (1/sqrt(n)) * [1, e^{j pi sin t}, ..., e^{j(n-1) pi sin t}].
CVec array_response(double theta, int n);

// Normalized unitary DFT basis, U(j,k) = e^{j 2 pi j k / n} / sqrt(n).
// Column k equals array_response(theta) when sin(theta) = 2k/n (mod 2).
CMat dft_matrix(int n);

// Draws path angles and gains. OffGrid: angles uniform on [0, 2pi).
// OnGrid: angles snapped to DFT bins drawn without replacement per side.
PathSet generate_paths(const SystemConfig& cfg, Rng& rng);

// H = sqrt(n_rx*n_tx/n_paths) * sum_l gain_l a_r(aoa_l) a_t(aod_l)^H,
// plus its virtual-domain image U_r^H H U_t.
ChannelRealization assemble_channel(const SystemConfig& cfg, const PathSet& paths);

// Number of entries with magnitude above tol.
int virtual_support_size(const CMat& h_virtual, double tol);

}  // namespace obce
