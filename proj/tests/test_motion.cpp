#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "penme/motion.hpp"

using namespace penme;

TEST_CASE("motion strength basics") {
  const Frame a = oracle::noise_frame(1);
  CHECK(motion_strength({a, a}).first == 0.0);

  Frame zeros(16, 16, 0.0), ones(16, 16, 1.0);
  const double m = motion_strength({zeros, ones}).first;
  CHECK(m == doctest::Approx(256.0 / (256.0 + 1e-8)));

  Frame small(16, 16), twice(16, 16);
  Rng rng(3);
  for (size_t i = 0; i < small.pixels.size(); ++i) {
    small.pixels[i] = rng.next_range(0.0, 0.5);
    twice.pixels[i] = 2.0 * small.pixels[i];
  }
  // Brightness-scale invariance (exact at eps = 0): m(F1, 2F1) computed for
  // c*F has the same value for any c > 0. Check two scales against each
  // other through the eps-carrying implementation at loose tolerance.
  const double m1 = motion_strength({small, twice}).first;
  Frame small2 = small, twice2 = twice;
  for (auto& v : small2.pixels) v *= 0.125;
  for (auto& v : twice2.pixels) v *= 0.125;
  const double m2 = motion_strength({small2, twice2}).first;
  CHECK(m1 == doctest::Approx(m2).epsilon(1e-6));

  Frame other(8, 8, 0.0);
  CHECK_THROWS_AS(motion_strength({a, other}), Error);
  CHECK_THROWS_AS(motion_strength({a}), Error);
}

TEST_CASE("phase correlation recovers circular shifts exactly") {
  const Frame a = oracle::noise_frame(42);
  const Frame b = oracle::circular_shift(a, 5, 3);
  const CorrelationResult r = phase_correlate(a, b);
  CHECK(r.shift == Vec2i{5, 3});
  CHECK(r.sharpness > 0.9);

  const CorrelationResult self = phase_correlate(a, a);
  CHECK(self.shift == Vec2i{0, 0});
  CHECK(self.sharpness > 0.9);

  CHECK_THROWS_AS(phase_correlate(Frame(64, 64, 0.0), Frame(64, 64, 0.0)), Error);
}

TEST_CASE("phase correlation sharpness separates noise from alignment") {
  // s = p/(p + mu + eps) has a structural floor of 1/2 because the
  // background mean never exceeds the surface maximum; uncorrelated inputs
  // sit just above it, far below the coherent-shift regime.
  double max_sharp = 0.0;
  double min_sharp = 1.0;
  for (int s = 0; s < 100; ++s) {
    const Frame a = oracle::noise_frame(1000 + s);
    const Frame b = oracle::noise_frame(5000 + s);
    const double v = phase_correlate(a, b).sharpness;
    max_sharp = std::max(max_sharp, v);
    min_sharp = std::min(min_sharp, v);
  }
  CHECK(min_sharp >= 0.5);
  CHECK(max_sharp < 0.9);
  // Every coherent circular shift scores above the noise ceiling.
  const Frame t = oracle::noise_frame(321);
  for (int d = 1; d <= 16; d += 5)
    CHECK(phase_correlate(t, oracle::circular_shift(t, d, -d)).sharpness > 0.9);
}

TEST_CASE("global consistency") {
  CHECK(global_consistency({{3, 0}, {3, 0}, {3, 0}}) == doctest::Approx(1.0));
  CHECK(global_consistency({{3, 0}, {-3, 0}}) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(global_consistency({{0, 0}, {0, 0}}) == 1.0);
  CHECK_THROWS_AS(global_consistency({{1, 1}}), Error);
}

TEST_CASE("block match finds translations and clamps at the search range") {
  const Frame a = oracle::noise_frame(9);
  SUBCASE("pure translation (2,1)") {
    Frame b(128, 128);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) b.at(x, y) = a.at_reflect(x - 2, y - 1);
    const BlockField f = block_match(a, b);
    for (int by = 1; by < f.grid_h - 1; ++by)
      for (int bx = 1; bx < f.grid_w - 1; ++bx)
        CHECK(f.at(bx, by) == Vec2i{2, 1});
  }
  SUBCASE("identity maps to zero vectors") {
    const BlockField f = block_match(a, a);
    for (const auto& v : f.vectors) CHECK(v == Vec2i{0, 0});
  }
  SUBCASE("shift beyond the range clamps to 4 on correlated texture") {
    // SAD only decays toward the true offset when content is spatially
    // correlated; white noise decorrelates a single pixel out.
    Frame smooth(128, 128), b(128, 128);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x)
        smooth.at(x, y) =
            0.5 + 0.25 * std::sin(0.21 * x + 0.4) * std::cos(0.17 * y) +
            0.2 * std::sin(0.09 * (x - y));
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) b.at(x, y) = smooth.at_reflect(x - 6, y);
    const BlockField f = block_match(smooth, b);
    for (int by = 1; by < f.grid_h - 1; ++by)
      for (int bx = 1; bx < f.grid_w - 1; ++bx) {
        // Exhaustive oracle agrees with the production search everywhere.
        CHECK(f.at(bx, by) == oracle::block_sad_ref(smooth, b, bx * 16, by * 16));
        CHECK(f.at(bx, by).x == 4);
      }
  }
  SUBCASE("full agreement with the exhaustive oracle on unrelated frames") {
    const Frame b = oracle::noise_frame(10);
    const BlockField f = block_match(a, b);
    for (int by = 0; by < f.grid_h; ++by)
      for (int bx = 0; bx < f.grid_w; ++bx)
        CHECK(f.at(bx, by) == oracle::block_sad_ref(a, b, bx * 16, by * 16));
  }
  CHECK_THROWS_AS(block_match(Frame(8, 8, 0.0), Frame(8, 8, 0.0)), Error);
}

TEST_CASE("heterogeneity") {
  BlockField f;
  f.grid_w = 4;
  f.grid_h = 2;
  f.vectors.assign(8, Vec2i{2, 1});
  CHECK(heterogeneity(f) == 0.0);

  f.vectors.assign(8, Vec2i{0, 0});
  CHECK(heterogeneity(f) == 0.0);

  for (int i = 0; i < 8; ++i) f.vectors[i] = i < 4 ? Vec2i{4, 0} : Vec2i{0, 0};
  CHECK(heterogeneity(f) == doctest::Approx(0.5).epsilon(1e-6));

  // Scale invariance of CV (checked at integer scales).
  BlockField g = f;
  for (auto& v : g.vectors) {
    v.x *= 3;
    v.y *= 3;
  }
  CHECK(heterogeneity(g) == doctest::Approx(heterogeneity(f)).epsilon(1e-6));
}

TEST_CASE("robust global shift uses the lower median") {
  BlockField f;
  f.grid_w = 3;
  f.grid_h = 1;
  f.vectors = {{0, 0}, {0, 0}, {9, 9}};
  CHECK(robust_global_shift(f) == Vec2i{0, 0});

  f.grid_w = 4;
  f.vectors = {{1, 0}, {2, 0}, {3, 0}, {4, 0}};
  CHECK(robust_global_shift(f) == Vec2i{2, 0});

  f.grid_w = 1;
  f.vectors = {{2, 1}};
  CHECK(robust_global_shift(f) == Vec2i{2, 1});
}

TEST_CASE("warp identities and integer shifts") {
  const Frame f = oracle::noise_frame(21);
  CHECK(warp(f, {0, 0}) == f);

  Frame c(32, 32, 0.7);
  const Frame wc = warp(c, {3.25, -1.5});
  for (double v : wc.pixels) CHECK(v == doctest::Approx(0.7));

  const Frame w = warp(f, {3, 2});
  for (int y = 2; y < 128; ++y)
    for (int x = 3; x < 128; ++x)
      CHECK(w.at(x, y) == doctest::Approx(f.at(x - 3, y - 2)));
}

TEST_CASE("residual error") {
  const Frame a = oracle::noise_frame(33);
  CHECK(residual_error(a, a, {0, 0}) == 0.0);

  const Frame b = warp(a, {3, 2});
  CHECK(residual_error(a, b, {3, 2}) < 0.02);

  double min_r = 1.0;
  for (int s = 0; s < 100; ++s) {
    const Frame x = oracle::noise_frame(7000 + s);
    const Frame y = oracle::noise_frame(9000 + s);
    min_r = std::min(min_r, residual_error(x, y, {0, 0}));
  }
  CHECK(min_r > 0.2);
}

TEST_CASE("image gradients") {
  SUBCASE("constant frames have zero gradients") {
    Frame c(16, 16, 0.4);
    const GradientField g = image_gradients(c, c);
    for (double v : g.ix.pixels) CHECK(v == 0.0);
    for (double v : g.iy.pixels) CHECK(v == 0.0);
    for (double v : g.it.pixels) CHECK(v == 0.0);
  }
  SUBCASE("column ramp has constant x-gradient in the interior") {
    Frame r(128, 128);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) r.at(x, y) = x / 127.0;
    const GradientField g = image_gradients(r, r);
    // Eight-sample stencil on a linear ramp: (k+1) - (k-1) = 2 sample steps.
    for (int y = 1; y < 127; ++y)
      for (int x = 1; x < 126; ++x) {
        CHECK(g.ix.at(x, y) == doctest::Approx(2.0 / 127.0));
        CHECK(g.it.at(x, y) == doctest::Approx(0.0));
      }
  }
  SUBCASE("temporal step has unit t-gradient") {
    Frame zeros(16, 16, 0.0), ones(16, 16, 1.0);
    const GradientField g = image_gradients(zeros, ones);
    for (int y = 1; y < 15; ++y)
      for (int x = 1; x < 15; ++x) {
        CHECK(g.it.at(x, y) == doctest::Approx(1.0));
        CHECK(g.ix.at(x, y) == doctest::Approx(0.0));
        CHECK(g.iy.at(x, y) == doctest::Approx(0.0));
      }
  }
  CHECK_THROWS_AS(image_gradients(Frame(2, 2, 0.0), Frame(2, 2, 0.0)), Error);
}

TEST_CASE("analyze_pair end to end") {
  const Frame a = oracle::noise_frame(55);
  SUBCASE("identical frames") {
    const MotionSignals s = analyze_pair(a, a);
    CHECK(s.strength == 0.0);
    CHECK(s.consistency == 1.0);
    CHECK(s.sharpness > 0.9);
    CHECK(s.heterogeneity == 0.0);
    CHECK(s.residual == 0.0);
  }
  SUBCASE("circular shift by (4,0)") {
    const Frame b = oracle::circular_shift(a, 4, 0);
    const MotionSignals s = analyze_pair(a, b);
    CHECK(s.strength > 0.0);
    CHECK(s.consistency > 0.9);
    CHECK(s.heterogeneity < 0.05);
    CHECK(s.residual < 0.1);
    CHECK(s.global_shift.x == doctest::Approx(4.0));
  }
  SUBCASE("half-frame noise replacement") {
    Frame b = a;
    Rng rng(77);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 64; ++x) b.at(x, y) = rng.next_double();
    const MotionSignals s = analyze_pair(a, b);
    CHECK(s.heterogeneity > 0.3);
    CHECK(s.residual > 0.1);
  }
}

TEST_CASE("signals stay inside their declared intervals under fuzzing") {
  for (int trial = 0; trial < 60; ++trial) {
    Rng rng(123456 + trial);
    Frame a(128, 128), b(128, 128);
    const double bias = rng.next_double();
    for (size_t i = 0; i < a.pixels.size(); ++i) {
      a.pixels[i] = clamp01(rng.next_double() * bias);
      b.pixels[i] = clamp01(a.pixels[i] + rng.next_range(-0.3, 0.3));
    }
    const MotionSignals s = analyze_pair(a, b);
    CHECK(s.strength >= 0.0);
    CHECK(s.strength < 1.0);
    CHECK(s.consistency >= 0.0);
    CHECK(s.consistency <= 1.0);
    CHECK(s.sharpness > 0.0);
    CHECK(s.sharpness < 1.0);
    CHECK(s.heterogeneity >= 0.0);
    CHECK(s.heterogeneity < 1.0);
    CHECK(s.residual >= 0.0);
    CHECK(s.residual < 1.0);
  }
}
