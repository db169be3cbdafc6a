#include "measurement.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace obce {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

CMat random_phase_matrix(int rows, int cols, Rng& rng) {
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    const double mag = 1.0 / std::sqrt(static_cast<double>(rows));
    CMat m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            m(r, c) = std::polar(mag, phase(rng));
    return m;
}

int hadamard_order_for(int n_streams, int n_frames) {
    int k = 1;
    while (k < std::max(n_streams, n_frames)) k *= 2;
    return k;
}

}  // namespace

Mat hadamard(int order) {
    if (order < 1 || (order & (order - 1)) != 0)
        throw std::invalid_argument("hadamard: order must be a power of two");
    Mat h = Mat::Ones(1, 1);
    for (int n = 1; n < order; n *= 2) {
        Mat next(2 * n, 2 * n);
        next.topLeftCorner(n, n) = h;
        next.topRightCorner(n, n) = h;
        next.bottomLeftCorner(n, n) = h;
        next.bottomRightCorner(n, n) = -h;
        h = std::move(next);
    }
    return h;
}

FrameHardware generate_frame_hardware(const SystemConfig& cfg, Rng& rng, int m) {
    if (m < 0 || m >= cfg.n_frames)
        throw std::invalid_argument("generate_frame_hardware: frame index out of range");

    FrameHardware fr;
    fr.f_rf = random_phase_matrix(cfg.n_tx, cfg.l_tx, rng);
    fr.w_rf = random_phase_matrix(cfg.n_rx, cfg.l_rx, rng);

    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(2.0));
    fr.f_bb.resize(cfg.l_tx, cfg.n_streams);
    for (int c = 0; c < cfg.n_streams; ++c)
        for (int r = 0; r < cfg.l_tx; ++r)
            fr.f_bb(r, c) = std::complex<double>(gauss(rng), gauss(rng));
    const double norm = (fr.f_rf * fr.f_bb).norm();
    if (norm == 0.0)
        throw std::runtime_error("generate_frame_hardware: degenerate baseband precoder");
    fr.f_bb *= std::sqrt(static_cast<double>(cfg.n_streams)) / norm;

    const int order = hadamard_order_for(cfg.n_streams, cfg.n_frames);
    static thread_local Mat had_cache;
    if (had_cache.rows() != order) had_cache = hadamard(order);
    const int col = m % order;
    fr.symbols.resize(cfg.n_streams);
    const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.n_streams));
    for (int i = 0; i < cfg.n_streams; ++i)
        fr.symbols(i) = scale * had_cache(i, col);
    return fr;
}

CMat build_gamma(const FrameHardware& frame) {
    if (frame.f_bb.rows() != frame.f_rf.cols() ||
        frame.symbols.size() != frame.f_bb.cols())
        throw std::invalid_argument("build_gamma: inconsistent frame dimensions");
    // x^T = s^T F_BB^T F_RF^T, the transmitted antenna-domain row.
    Eigen::RowVectorXcd xt =
        frame.symbols.transpose() * frame.f_bb.transpose() * frame.f_rf.transpose();
    const CMat wh = frame.w_rf.adjoint();  // l_rx x n_rx
    const auto n_tx = xt.size();
    const auto n_rx = wh.cols();
    const auto l_rx = wh.rows();
    CMat gamma(l_rx, n_tx * n_rx);
    for (Eigen::Index k = 0; k < n_tx; ++k)
        gamma.middleCols(k * n_rx, n_rx) = xt(k) * wh;
    return gamma;
}

Mat real_lift(const CMat& m) {
    const auto r = m.rows(), c = m.cols();
    Mat out(2 * r, 2 * c);
    out.topLeftCorner(r, c) = m.real();
    out.topRightCorner(r, c) = -m.imag();
    out.bottomLeftCorner(r, c) = m.imag();
    out.bottomRightCorner(r, c) = m.real();
    return out;
}

Vec real_lift(const CVec& v) {
    Vec out(2 * v.size());
    out.head(v.size()) = v.real();
    out.tail(v.size()) = v.imag();
    return out;
}

CVec complexify(const Vec& v) {
    if (v.size() % 2 != 0)
        throw std::invalid_argument("complexify: odd-length vector");
    const auto n = v.size() / 2;
    CVec out(n);
    out.real() = v.head(n);
    out.imag() = v.tail(n);
    return out;
}

Vec quantize_sign(const Vec& v) {
    Vec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out(i) = v(i) >= 0.0 ? 1.0 : -1.0;
    return out;
}

MeasurementEnsemble assemble_ensemble(const SystemConfig& cfg,
                                      const std::vector<FrameHardware>& frames,
                                      const ChannelRealization& channel,
                                      Rng& rng) {
    if (static_cast<int>(frames.size()) != cfg.n_frames)
        throw std::invalid_argument("assemble_ensemble: expected n_frames frames");

    const int nv = cfg.n_tx * cfg.n_rx;
    const int rows = cfg.n_frames * cfg.l_rx;
    const CMat ut = dft_matrix(cfg.n_tx);
    const CMat ur = dft_matrix(cfg.n_rx);

    MeasurementEnsemble ens;
    ens.frames = frames;
    ens.phi.resize(rows, nv);
    ens.w_complex.resize(rows, nv);

    ens.psi.resize(nv, nv);
    const CMat ut_conj = ut.conjugate();
    for (int k = 0; k < cfg.n_tx; ++k)
        for (int j = 0; j < cfg.n_tx; ++j)
            ens.psi.block(j * cfg.n_rx, k * cfg.n_rx, cfg.n_rx, cfg.n_rx) =
                ut_conj(j, k) * ur;

    const double sqrt_rho = std::sqrt(cfg.rho());
    const double comp_sd = std::sqrt(cfg.noise_var / 2.0);
    std::normal_distribution<double> gauss(0.0, comp_sd);

    CVec noise_tilde(rows);
    for (int m = 0; m < cfg.n_frames; ++m) {
        const FrameHardware& fr = frames[m];
        ens.phi.middleRows(m * cfg.l_rx, cfg.l_rx) = build_gamma(fr);

        // Gamma_m * Psi via the mixed-product rule:
        // (x^T kron W^H)(conj(U_t) kron U_r) = (x^T conj(U_t)) kron (W^H U_r).
        Eigen::RowVectorXcd xt =
            fr.symbols.transpose() * fr.f_bb.transpose() * fr.f_rf.transpose();
        Eigen::RowVectorXcd xt_u = xt * ut_conj;
        const CMat whu = fr.w_rf.adjoint() * ur;
        for (int k = 0; k < cfg.n_tx; ++k)
            ens.w_complex.block(m * cfg.l_rx, k * cfg.n_rx, cfg.l_rx, cfg.n_rx) =
                (sqrt_rho * xt_u(k)) * whu;

        // Combined noise for this frame: W_RF^H n_m.
        CVec n_m = CVec::Zero(cfg.n_rx);
        if (comp_sd > 0.0)
            for (int i = 0; i < cfg.n_rx; ++i)
                n_m(i) = std::complex<double>(gauss(rng), gauss(rng));
        noise_tilde.segment(m * cfg.l_rx, cfg.l_rx) = fr.w_rf.adjoint() * n_m;
    }

    ens.w_real = real_lift(ens.w_complex);
    const CVec h_v_tilde =
        Eigen::Map<const CVec>(channel.h_virtual.data(), nv);  // column-major vec
    const Vec h_v_real = real_lift(h_v_tilde);
    ens.r_noiseless = ens.w_real * h_v_real;
    ens.r_noisy = ens.r_noiseless + real_lift(noise_tilde);
    ens.y_sign = quantize_sign(ens.r_noisy);
    return ens;
}

void dump_ensemble(const std::string& path, const MeasurementEnsemble& ens,
                   const Vec& h_v_real) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("dump_ensemble: cannot open " + path);
    const std::int64_t header[4] = {ens.w_real.rows(), ens.w_real.cols(),
                                    ens.y_sign.size(), h_v_real.size()};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    // Row-major payload.
    for (Eigen::Index r = 0; r < ens.w_real.rows(); ++r) {
        const Vec row = ens.w_real.row(r);
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size() * sizeof(double)));
    }
    out.write(reinterpret_cast<const char*>(ens.y_sign.data()),
              static_cast<std::streamsize>(ens.y_sign.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(h_v_real.data()),
              static_cast<std::streamsize>(h_v_real.size() * sizeof(double)));
    if (!out) throw std::runtime_error("dump_ensemble: write failed for " + path);
}

}  // namespace obce
