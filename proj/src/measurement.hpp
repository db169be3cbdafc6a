#pragma once

#include <string>
#include <vector>

#include "channel.hpp"
#include "config.hpp"

namespace obce {

/// Analog/digital training hardware for one frame.
struct FrameHardware {
    CMat f_rf;     // n_tx x l_tx, constant-modulus entries
    CMat f_bb;     // l_tx x n_streams
    CMat w_rf;     // n_rx x l_rx, constant-modulus entries
    CVec symbols;  // n_streams
};

/// Stacked sensing model over all frames, complex and real-lifted forms.
struct MeasurementEnsemble {
    std::vector<FrameHardware> frames;
    CMat phi;        // (M*l_rx) x (n_tx*n_rx), stacked per-frame Gamma_m
    CMat psi;        // (n_tx*n_rx) x (n_tx*n_rx), conj(U_t) kron U_r
    CMat w_complex;  // sqrt(rho) * phi * psi
    Mat w_real;      // [[Re, -Im], [Im, Re]] lift of w_complex
    Vec r_noiseless;  // w_real * h_v_real
    Vec r_noisy;      // r_noiseless + lifted combined noise
    Vec y_sign;       // elementwise sign of r_noisy, sign(0) = +1
};

// Sylvester Hadamard matrix; order must be a power of two.
Mat hadamard(int order);

// Random-phase RF precoder/combiner, power-constrained baseband precoder,
// and Hadamard training symbols for frame m.
FrameHardware generate_frame_hardware(const SystemConfig& cfg, Rng& rng, int m);

// Gamma_m = (s^T F_BB^T F_RF^T) kron (W_RF^H), shape l_rx x (n_tx*n_rx).
CMat build_gamma(const FrameHardware& frame);

// Builds the full stacked model for one channel realization, drawing
// fresh receiver noise from rng.
MeasurementEnsemble assemble_ensemble(const SystemConfig& cfg,
                                      const std::vector<FrameHardware>& frames,
                                      const ChannelRealization& channel,
                                      Rng& rng);

// Elementwise sign with sign(0) = +1.
Vec quantize_sign(const Vec& v);

// [[Re, -Im], [Im, Re]] block lift.
Mat real_lift(const CMat& m);
// [Re; Im] stacking.
Vec real_lift(const CVec& v);
// Inverse of the vector lift.
CVec complexify(const Vec& v);

// Binary dump of (w_real, y_sign, h_v_real): four little-endian int64
// header fields (rows, cols, y length, h length) followed by row-major
// little-endian f64 payloads.
void dump_ensemble(const std::string& path, const MeasurementEnsemble& ens,
                   const Vec& h_v_real);

}  // namespace obce
