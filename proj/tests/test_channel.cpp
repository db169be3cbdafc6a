#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "channel.hpp"

using namespace obce;

namespace {

SystemConfig small_cfg() {
    SystemConfig cfg;
    cfg.n_tx = 16;
    cfg.n_rx = 8;
    cfg.l_tx = cfg.l_rx = 2;
    cfg.n_streams = 2;
    cfg.n_paths = 2;
    cfg.n_frames = 8;
    return cfg;
}

}  // namespace

TEST_CASE("array_response basic values") {
    CVec a = array_response(0.0, 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(a(i).real() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(a(i).imag() == doctest::Approx(0.0).epsilon(1e-14));
    }

    CVec b = array_response(std::numbers::pi / 2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(b(0) - std::complex<double>(s, 0)) < 1e-12);
    CHECK(std::abs(b(1) - std::complex<double>(-s, 0)) < 1e-12);
}

TEST_CASE("array_response has unit norm for any angle") {
    for (double theta : {0.1, 1.7, 3.9, 6.2, -2.5, 100.0})
        CHECK(array_response(theta, 8).norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("DFT matrices are unitary") {
    for (int n : {4, 16, 64}) {
        CMat u = dft_matrix(n);
        CMat g = u.adjoint() * u;
        CHECK((g - CMat::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("on-grid angles align exactly with DFT columns") {
    SystemConfig cfg;
    cfg.n_tx = 64;
    cfg.n_rx = 16;
    cfg.n_paths = 4;
    cfg.grid_mode = GridMode::OnGrid;
    CMat u = dft_matrix(64);
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        Rng rng(seed);
        PathSet p = generate_paths(cfg, rng);
        for (double aod : p.aod) {
            CVec a = array_response(aod, 64);
            double best = 0.0;
            for (int k = 0; k < 64; ++k)
                best = std::max(best, std::abs(u.col(k).dot(a)));
            CHECK(best == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("generate_paths respects lengths and determinism") {
    SystemConfig cfg = small_cfg();
    Rng r1(42), r2(42);
    PathSet a = generate_paths(cfg, r1);
    PathSet b = generate_paths(cfg, r2);
    REQUIRE(a.aod.size() == 2);
    REQUIRE(a.aoa.size() == 2);
    REQUIRE(a.gains.size() == 2);
    CHECK(a.aod == b.aod);
    CHECK(a.aoa == b.aoa);
    CHECK(a.gains == b.gains);
    for (double t : a.aod) {
        CHECK(t >= 0.0);
        CHECK(t < 2 * std::numbers::pi);
    }
}

TEST_CASE("single on-grid path lands in one virtual bin") {
    SystemConfig cfg = small_cfg();
    cfg.n_paths = 1;
    PathSet p;
    // Bin 3 on the tx side, bin 5 on the rx side.
    auto bin_angle = [](int k, int n) {
        double u = 2.0 * k / n;
        if (u >= 1.0) u -= 2.0;
        double t = std::asin(u);
        return t < 0 ? t + 2 * std::numbers::pi : t;
    };
    p.aod = {bin_angle(3, cfg.n_tx)};
    p.aoa = {bin_angle(5, cfg.n_rx)};
    p.gains = {{1.0, 0.0}};
    ChannelRealization c = assemble_channel(cfg, p);
    const double expected = std::sqrt(static_cast<double>(cfg.n_rx) * cfg.n_tx);
    CHECK(std::abs(c.h_virtual(5, 3)) == doctest::Approx(expected).epsilon(1e-10));
    CMat rest = c.h_virtual;
    rest(5, 3) = 0.0;
    CHECK(rest.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("virtual representation round-trips") {
    SystemConfig cfg = small_cfg();
    Rng rng(7);
    ChannelRealization c = assemble_channel(cfg, generate_paths(cfg, rng));
    CMat back = dft_matrix(cfg.n_rx) * c.h_virtual * dft_matrix(cfg.n_tx).adjoint();
    CHECK((back - c.h).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("on-grid channels have exactly n_paths virtual entries") {
    SystemConfig cfg = small_cfg();
    cfg.n_paths = 3;
    cfg.grid_mode = GridMode::OnGrid;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Rng rng(seed);
        ChannelRealization c = assemble_channel(cfg, generate_paths(cfg, rng));
        CHECK(virtual_support_size(c.h_virtual, 1e-9) == 3);
    }
}

TEST_CASE("off-grid channels leak beyond n_paths bins") {
    SystemConfig cfg = small_cfg();
    cfg.n_paths = 3;
    cfg.grid_mode = GridMode::OffGrid;
    Rng rng(11);
    ChannelRealization c = assemble_channel(cfg, generate_paths(cfg, rng));
    CHECK(virtual_support_size(c.h_virtual, 1e-9) > 3);
}

TEST_CASE("virtual_support_size edge cases") {
    CHECK(virtual_support_size(CMat::Zero(4, 4), 1e-9) == 0);
    CHECK_THROWS_AS(virtual_support_size(CMat::Zero(2, 2), 0.0),
                    std::invalid_argument);
}

TEST_CASE("channel power is normalized on average") {
    SystemConfig cfg = small_cfg();
    const double target = static_cast<double>(cfg.n_tx) * cfg.n_rx;
    Rng rng(123);
    double acc = 0.0;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        PathSet p = generate_paths(cfg, rng);
        ChannelRealization c = assemble_channel(cfg, p);
        acc += c.h.squaredNorm();
    }
    const double ratio = acc / trials / target;
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
}

TEST_CASE("identical seed gives bit-identical realizations") {
    SystemConfig cfg = small_cfg();
    Rng r1(99), r2(99);
    ChannelRealization a = assemble_channel(cfg, generate_paths(cfg, r1));
    ChannelRealization b = assemble_channel(cfg, generate_paths(cfg, r2));
    CHECK(a.h == b.h);
    CHECK(a.h_virtual == b.h_virtual);
}
