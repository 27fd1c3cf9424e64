#include <doctest.h>

#include "oracles.hpp"
#include "penme/metrics.hpp"
#include "penme/receiver.hpp"

using namespace penme;

TEST_CASE("motion imputation") {
  CHECK(impute_motion({3, 1}, {3, 1}, 0.31) == Vec2d{3, 1});
  const Vec2d v = impute_motion({2, 2}, {0, 0}, 0.7);
  CHECK(v.x == doctest::Approx(1.4));
  CHECK(v.y == doctest::Approx(1.4));
  const Vec2d w = impute_motion({1, 0}, {0, 1}, 0.5);
  CHECK(w.x == doctest::Approx(0.5));
  CHECK(w.y == doctest::Approx(0.5));
  CHECK_THROWS_AS(impute_motion({1, 0}, {0, 1}, 1.0), Error);
  CHECK_THROWS_AS(impute_motion({1, 0}, {0, 1}, 0.0), Error);
}

TEST_CASE("residual interpolation") {
  bool fallback = false;
  const std::vector<double> r = {0.25, 0.25};
  CHECK(interpolate_residual({r, r, r}, 2, fallback) == r);
  CHECK_FALSE(fallback);

  const std::vector<double> zeros(4, 0.0), ones(4, 1.0);
  const auto mixed = interpolate_residual({zeros, ones}, 4, fallback);
  for (double v : mixed) CHECK(v == doctest::Approx(0.5));

  const auto empty = interpolate_residual({}, 3, fallback);
  CHECK(fallback);
  CHECK(empty == std::vector<double>(3, 0.0));
}

TEST_CASE("refine preserves constants and is idempotent on them") {
  const Frame c(128, 128, 0.37);
  ReconstructionState st = init_state(c, 256, 256);
  RefinerConfig cfg;
  const Frame once = refine(c, st, cfg);
  CHECK(once == c);
  CHECK(refine(once, st, cfg) == once);
}

TEST_CASE("refine with beta=0 is a pure median filter") {
  Frame f = oracle::noise_frame(31);
  ReconstructionState st = init_state(f, 256, 256);
  RefinerConfig cfg;
  cfg.blend_beta = 0.0;
  const Frame out = refine(f, st, cfg);
  // Independent 3x3 median at a few probe pixels.
  for (const auto [px, py] : {std::pair{5, 7}, std::pair{64, 64}, std::pair{0, 0}}) {
    std::vector<double> w;
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) w.push_back(f.at_reflect(px + dx, py + dy));
    std::sort(w.begin(), w.end());
    CHECK(out.at(px, py) == w[4]);
  }
}

TEST_CASE("refine reduces impulsive noise on smooth content") {
  double improved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Frame truth(128, 128);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x)
        truth.at(x, y) = 0.5 + 0.3 * std::sin(0.1 * x + trial) * std::cos(0.07 * y);
    Frame noisy = truth;
    Rng rng(400 + trial);
    const int n_salt = static_cast<int>(noisy.pixels.size() / 100);
    for (int i = 0; i < n_salt; ++i)
      noisy.pixels[rng.next_below(static_cast<std::uint32_t>(noisy.pixels.size()))] = 1.0;
    ReconstructionState st = init_state(truth, 256, 256);  // clean temporal ref
    const Frame refined = refine(noisy, st, RefinerConfig{});
    if (mse(refined, truth) < mse(noisy, truth)) ++improved;
  }
  CHECK(improved == 100);
}

TEST_CASE("refine output stays in [0,1]") {
  const Frame f = oracle::noise_frame(77);
  ReconstructionState st = init_state(oracle::noise_frame(78), 256, 256);
  st.prev_motion = {2.5, -1.0};
  const Frame out = refine(f, st, RefinerConfig{});
  for (double v : out.pixels) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("skipped payload without trigger reproduces the prediction") {
  const Frame prev = oracle::noise_frame(41);
  ReconstructionState st = init_state(prev, 448, 256);
  ResidualPayload skip;
  skip.skipped = true;
  const ReconstructionOutput out = reconstruct_frame(st, skip, ReceiverParams{});
  CHECK_FALSE(out.refined);
  CHECK(out.frame == upscale(prev, 448, 256));
}

TEST_CASE("lossless CNN payload from a translation pair reconstructs above 30 dB") {
  // Build a smooth moving scene so the down/up path dominates the error.
  Frame prev(128, 128), next(128, 128);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x)
      prev.at(x, y) = 0.5 + 0.35 * std::sin(0.11 * x) * std::cos(0.13 * y);
  for (int y = 0; y < 128; ++y)
    for (int x = 0; x < 128; ++x) next.at(x, y) = prev.at_reflect(x - 3, y - 2);
  const MotionSignals s = analyze_pair(prev, next);
  CodecConfig cfg;
  const ResidualPayload p = encode_frame(prev, next, s, Modality::CNN, cfg);
  ReconstructionState st = init_state(prev, 448, 256);
  const ReconstructionOutput out = reconstruct_frame(st, p, ReceiverParams{});
  const Frame truth = upscale(next, 448, 256);
  CHECK(psnr(mse(out.frame, truth)) > 30.0);
}

TEST_CASE("imputation reaches a fixed point after identical motion") {
  const Frame base = oracle::noise_frame(43);
  ReconstructionState st = init_state(base, 448, 256);
  st.prev_motion = {3, 1};
  st.prev_prev_motion = {3, 1};
  const ReconstructionOutput out = reconstruct_frame(st, std::nullopt, ReceiverParams{});
  CHECK(out.concealed);
  CHECK(st.prev_motion == Vec2d{3, 1});  // imputed motion equals the history
  // Prediction used the imputed motion.
  CHECK(out.frame == upscale(warp(base, {3, 1}), 448, 256));
}

TEST_CASE("receiver determinism for a fixed payload trace") {
  const Frame a = oracle::noise_frame(51);
  const Frame b = oracle::noise_frame(52);
  const MotionSignals s = analyze_pair(a, b);
  CodecConfig ccfg;
  ccfg.epsilon_gate = 1e-9;
  const ResidualPayload p = encode_frame(a, b, s, Modality::FLOW, ccfg);

  auto run = [&]() {
    ReconstructionState st = init_state(a, 448, 256);
    std::vector<Frame> outs;
    outs.push_back(reconstruct_frame(st, p, ReceiverParams{}).frame);
    outs.push_back(reconstruct_frame(st, std::nullopt, ReceiverParams{}).frame);
    outs.push_back(reconstruct_frame(st, p, ReceiverParams{}).frame);
    return outs;
  };
  const auto r1 = run();
  const auto r2 = run();
  for (size_t i = 0; i < r1.size(); ++i) CHECK(r1[i] == r2[i]);
}

TEST_CASE("receiver history mirrors the transmitter when nothing is lost") {
  const Frame f0 = oracle::noise_frame(61);
  const Frame f1 = oracle::noise_frame(62);
  const Frame f2 = oracle::noise_frame(63);
  CodecConfig ccfg;
  ccfg.epsilon_gate = 1e-9;

  ResidualHistory tx_history;
  ReconstructionState rx = init_state(f0, 448, 256);
  Frame tx_recon = f0;
  for (const Frame* next : {&f1, &f2}) {
    const MotionSignals s = analyze_pair(tx_recon, *next);
    const Modality f = select_modality(fuse_scores(s));
    const ResidualPayload p = encode_frame(rx.prev_recon, *next, s, f, ccfg);
    tx_history.push(payload_residual_scalar(p));
    reconstruct_frame(rx, p, ReceiverParams{});
    tx_recon = *next;
  }
  CHECK(rx.residual_history.size() == tx_history.size());
  CHECK(rx.residual_history.percentile_raw(0.5) == tx_history.percentile_raw(0.5));
  CHECK(rx.residual_history.percentile_raw(0.01) == tx_history.percentile_raw(0.01));
}

TEST_CASE("uninitialized state is rejected") {
  ReconstructionState st;
  CHECK_THROWS_AS(reconstruct_frame(st, std::nullopt, ReceiverParams{}), Error);
}
