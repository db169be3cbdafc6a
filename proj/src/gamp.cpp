#include "gamp.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace obce {

namespace {

constexpr double kVarMin = 1e-12;
constexpr double kVarMax = 1e12;

double clamp_var(double v) {
    if (v < kVarMin) return kVarMin;
    if (v > kVarMax) return kVarMax;
    return v;
}

// exp(x^2) * erfc(x), without overflow for large x.
double erfcx(double x) {
    if (x < 25.0) return std::exp(x * x) * std::erfc(x);
    // Asymptotic series, relative error < 1e-16 for x >= 25.
    const double ix2 = 1.0 / (x * x);
    double s = 1.0 + ix2 * (-0.5 + ix2 * (0.75 + ix2 * (-1.875 + ix2 * 6.5625)));
    return s / (x * std::sqrt(std::numbers::pi));
}

// Hazard function phi(a) / Q(a) of the standard normal.
double normal_hazard(double a) {
    return std::sqrt(2.0 / std::numbers::pi) / erfcx(a / std::sqrt(2.0));
}

}  // namespace

std::pair<double, double> truncated_gaussian_moments(int sign, double mean,
                                                     double var) {
    if (!(var > 0.0))
        throw std::invalid_argument("truncated_gaussian_moments: var must be > 0");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("truncated_gaussian_moments: sign must be +-1");
    // Reduce to truncation onto (0, inf) by symmetry.
    const double mu = sign > 0 ? mean : -mean;
    const double sd = std::sqrt(var);
    const double alpha = -mu / sd;  // standardized truncation point
    const double lam = normal_hazard(alpha);
    double m = mu + sd * lam;
    double v = var * (1.0 + alpha * lam - lam * lam);
    if (v < 0.0) v = 0.0;  // round-off in the deep tail
    return {sign > 0 ? m : -m, v};
}

std::pair<double, double> prior_denoiser(double r_hat, double v_r,
                                         const SparsePrior& prior) {
    if (!(v_r > 0.0))
        throw std::invalid_argument("prior_denoiser: v_r must be > 0");
    const double sx2 = prior.active_var;
    const double total = sx2 + v_r;
    const double d = r_hat - prior.mean;
    // Moments of the active (Gaussian) posterior component.
    const double m1 = prior.mean + sx2 * d / total;
    const double v1 = sx2 * v_r / total;

    double pi_act = 1.0;
    if (prior.sparsity < 1.0) {
        if (prior.sparsity <= 0.0) return {0.0, 0.0};
        // log N(r; 0, v_r) - log N(r; mean, sx2 + v_r)
        const double log_ratio = 0.5 * std::log(total / v_r) -
                                 0.5 * r_hat * r_hat / v_r + 0.5 * d * d / total;
        const double u =
            std::log((1.0 - prior.sparsity) / prior.sparsity) + log_ratio;
        pi_act = 1.0 / (1.0 + std::exp(u));
        if (u > 700.0) pi_act = 0.0;  // exp would overflow; spike dominates
    }
    const double mean = pi_act * m1;
    const double var = pi_act * (v1 + m1 * m1) - mean * mean;
    return {mean, var < 0.0 ? 0.0 : var};
}

namespace {

// Shared GAMP recursion; the output channel maps (y_i, p_hat_i, tau_i)
// to (s_hat_i, v_s_i).
template <typename OutputStep>
GampResult run_gamp(const Mat& w, const Vec& y, const SparsePrior& prior,
                    const GampOptions& opts, const Vec* h_true,
                    OutputStep output_step) {
    const auto n_meas = w.rows();
    const auto n_coef = w.cols();
    if (y.size() != n_meas)
        throw std::invalid_argument("gamp: measurement length mismatch");
    if (h_true && h_true->size() != n_coef)
        throw std::invalid_argument("gamp: truth length mismatch");
    if (opts.max_iters < 1)
        throw std::invalid_argument("gamp: max_iters must be >= 1");

    const Mat w2 = w.cwiseAbs2();
    const double beta = opts.damping;

    GampResult res;
    Vec h_hat = Vec::Constant(n_coef, prior.sparsity * prior.mean);
    Vec v_h = Vec::Constant(
        n_coef, clamp_var(prior.sparsity * (prior.active_var + prior.mean * prior.mean) -
                          std::pow(prior.sparsity * prior.mean, 2)));
    Vec s_hat = Vec::Zero(n_meas);
    Vec v_p(n_meas), p_hat(n_meas), v_s(n_meas), v_r(n_coef), r_hat(n_coef);
    Vec h_new(n_coef);

    // Tail average over the last half of the budget: if the recursion never
    // meets the stop tolerance it ends in a bounded oscillation, and the
    // orbit center is a far better estimate than whichever iterate the
    // budget happens to land on.
    Vec h_tail = Vec::Zero(n_coef);
    int tail_count = 0;
    bool converged = false;

    const double h_true_norm2 = h_true ? h_true->squaredNorm() : 0.0;

    for (int t = 1; t <= opts.max_iters; ++t) {
        // Measurement update.
        v_p.noalias() = w2 * v_h;
        v_p = v_p.unaryExpr([](double v) { return clamp_var(v); });
        p_hat.noalias() = w * h_hat;
        p_hat -= v_p.cwiseProduct(s_hat);

        for (Eigen::Index i = 0; i < n_meas; ++i) {
            auto [si, vsi] = output_step(y(i), p_hat(i), v_p(i));
            s_hat(i) = beta * si + (1.0 - beta) * s_hat(i);
            vsi = clamp_var(vsi);
            v_s(i) = t == 1 ? vsi : beta * vsi + (1.0 - beta) * v_s(i);
        }

        // Estimation update.
        v_r.noalias() = w2.transpose() * v_s;
        v_r = v_r.unaryExpr([](double v) { return 1.0 / clamp_var(v); });
        v_r = v_r.unaryExpr([](double v) { return clamp_var(v); });
        r_hat.noalias() = w.transpose() * s_hat;
        r_hat = h_hat + v_r.cwiseProduct(r_hat);

        for (Eigen::Index i = 0; i < n_coef; ++i) {
            auto [mi, vi] = prior_denoiser(r_hat(i), v_r(i), prior);
            h_new(i) = mi;
            v_h(i) = beta * clamp_var(vi) + (1.0 - beta) * v_h(i);
        }

        const double prev_norm = std::max(h_hat.norm(), 1e-12);
        const double delta = (h_new - h_hat).norm() / prev_norm;
        h_hat = beta * h_new + (1.0 - beta) * h_hat;

        if (!h_hat.allFinite())
            throw std::runtime_error("gamp: non-finite estimate at iteration " +
                                     std::to_string(t));

        double proxy = std::numeric_limits<double>::quiet_NaN();
        if (h_true) proxy = (h_hat - *h_true).squaredNorm() / h_true_norm2;
        res.trace.push_back({t, delta, proxy});

        if (2 * t > opts.max_iters) {
            h_tail += h_hat;
            ++tail_count;
        }
        if (delta < opts.stop_tol) {
            converged = true;
            break;
        }
    }
    if (!converged && tail_count > 0) h_hat = h_tail / tail_count;
    res.h_hat = std::move(h_hat);
    return res;
}

}  // namespace

GampResult one_bit_gamp(const Mat& w_real, const Vec& y_sign,
                        const SparsePrior& prior, double noise_var_real,
                        const GampOptions& opts, const Vec* h_true) {
    if (!(noise_var_real > 0.0))
        throw std::invalid_argument("one_bit_gamp: noise_var_real must be > 0");
    for (Eigen::Index i = 0; i < y_sign.size(); ++i)
        if (y_sign(i) != 1.0 && y_sign(i) != -1.0)
            throw std::invalid_argument("one_bit_gamp: observations must be +-1");
    auto output = [noise_var_real](double y, double p, double vp) {
        const double tau = vp + noise_var_real;
        auto [ez, vz] = truncated_gaussian_moments(y > 0 ? 1 : -1, p, tau);
        const double s = (ez - p) / tau;
        const double vs = (1.0 - vz / tau) / tau;
        return std::pair<double, double>(s, vs);
    };
    return run_gamp(w_real, y_sign, prior, opts, h_true, output);
}

GampResult awgn_gamp(const Mat& w_real, const Vec& y_values,
                     const SparsePrior& prior, double noise_var_real,
                     const GampOptions& opts, const Vec* h_true) {
    if (!(noise_var_real > 0.0))
        throw std::invalid_argument("awgn_gamp: noise_var_real must be > 0");
    auto output = [noise_var_real](double y, double p, double vp) {
        const double tau = vp + noise_var_real;
        return std::pair<double, double>((y - p) / tau, 1.0 / tau);
    };
    return run_gamp(w_real, y_values, prior, opts, h_true, output);
}

CVec ls_estimate(const CMat& w_complex, const CVec& r_unquantized) {
    if (r_unquantized.size() != w_complex.rows())
        throw std::invalid_argument("ls_estimate: observation length mismatch");
    if (r_unquantized.isZero(0.0)) return CVec::Zero(w_complex.cols());

    if (w_complex.rows() <= w_complex.cols()) {
        // Minimum-norm solution via the dual normal equations.
        CMat gram = w_complex * w_complex.adjoint();
        const double ridge = 1e-12 * gram.diagonal().real().maxCoeff();
        gram.diagonal().array() += ridge;
        return w_complex.adjoint() * gram.ldlt().solve(r_unquantized);
    }
    CMat gram = w_complex.adjoint() * w_complex;
    const double ridge = 1e-12 * gram.diagonal().real().maxCoeff();
    gram.diagonal().array() += ridge;
    return gram.ldlt().solve(w_complex.adjoint() * r_unquantized);
}

double nmse(const CMat& h_true, const CMat& h_est) {
    if (h_true.rows() != h_est.rows() || h_true.cols() != h_est.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    const double denom = h_true.squaredNorm();
    if (!(denom > 0.0)) throw std::invalid_argument("nmse: zero-norm reference");
    return (h_true - h_est).squaredNorm() / denom;
}

void write_trace_csv(
    const std::string& path,
    const std::vector<std::pair<std::string, std::vector<IterDiag>>>& traces) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
    out << "algorithm,iter,delta,nmse_proxy\n";
    char buf[64];
    for (const auto& [name, trace] : traces) {
        for (const IterDiag& d : trace) {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g", d.delta, d.nmse_proxy);
            out << name << ',' << d.iter << ',' << buf << '\n';
        }
    }
    if (!out) throw std::runtime_error("write_trace_csv: write failed for " + path);
}

}  // namespace obce
