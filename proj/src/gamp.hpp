#pragma once

#include <utility>
#include <vector>

#include "channel.hpp"

namespace obce {

/// Bernoulli-Gaussian prior on each real coefficient: zero with
/// probability 1 - sparsity, otherwise N(mean, active_var).
struct SparsePrior {
    double sparsity = 1.0;
    double active_var = 1.0;
    double mean = 0.0;
};

struct GampOptions {
    int max_iters = 50;
    double damping = 1.0;   // 1.0 disables damping
    double stop_tol = 1e-6;
};

struct IterDiag {
    int iter;
    double delta;       // relative change of the estimate
    double nmse_proxy;  // vs supplied truth, NaN when no truth given
};

struct GampResult {
    Vec h_hat;
    std::vector<IterDiag> trace;
};

// Mean and variance of N(mean, var) truncated to the half-line selected
// by sign (+1 -> r > 0, -1 -> r < 0). Stable for |mean|/sqrt(var) >> 1.
std::pair<double, double> truncated_gaussian_moments(int sign, double mean,
                                                     double var);

// Posterior mean and variance of a Bernoulli-Gaussian scalar observed
// through a Gaussian likelihood N(r_hat, v_r).
std::pair<double, double> prior_denoiser(double r_hat, double v_r,
                                         const SparsePrior& prior);

// One-bit GAMP: sign observations, truncated-Gaussian output step with
// total variance v_p + noise_var_real. h_true (optional, real-lifted)
// enables the per-iteration NMSE proxy in the trace.
GampResult one_bit_gamp(const Mat& w_real, const Vec& y_sign,
                        const SparsePrior& prior, double noise_var_real,
                        const GampOptions& opts, const Vec* h_true = nullptr);

// Same recursion with the AWGN output channel closed form.
GampResult awgn_gamp(const Mat& w_real, const Vec& y_values,
                     const SparsePrior& prior, double noise_var_real,
                     const GampOptions& opts, const Vec* h_true = nullptr);

// Minimum-norm least squares on the unquantized complex observation,
// stabilized with a tiny spectral ridge.
CVec ls_estimate(const CMat& w_complex, const CVec& r_unquantized);

// ||h_true - h_est||_F^2 / ||h_true||_F^2.
double nmse(const CMat& h_true, const CMat& h_est);

// Writes per-iteration traces as CSV (header: algorithm,iter,delta,nmse_proxy).
void write_trace_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<IterDiag>>>& traces);

}  // namespace obce
