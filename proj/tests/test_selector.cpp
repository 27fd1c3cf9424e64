#include <doctest.h>

#include "penme/rng.hpp"
#include "penme/selector.hpp"

using namespace penme;

namespace {
MotionSignals make_signals(double m, double cg, double s, double h, double r) {
  MotionSignals sig;
  sig.strength = m;
  sig.consistency = cg;
  sig.sharpness = s;
  sig.heterogeneity = h;
  sig.residual = r;
  return sig;
}
}  // namespace

TEST_CASE("score fusion structure") {
  ScoreTriple t = fuse_scores(make_signals(0, 1, 1, 0, 0));
  CHECK(t.cnn == 1.0);
  CHECK(t.flow == 0.0);
  CHECK(t.vit == 0.0);

  t = fuse_scores(make_signals(1, 1, 1, 0, 0));
  CHECK(t.cnn == 0.0);
  CHECK(t.flow == 1.0);
  CHECK(t.vit == 0.0);

  t = fuse_scores(make_signals(1, 0, 1, 1, 1));
  CHECK(t.cnn == 0.0);
  CHECK(t.flow == 0.0);
  CHECK(t.vit == 1.0);
}

TEST_CASE("scores stay in [0,1] for signals in their intervals") {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const ScoreTriple t = fuse_scores(
        make_signals(rng.next_double(), rng.next_double(), rng.next_double(),
                     rng.next_double(), rng.next_double()));
    CHECK(t.cnn >= 0.0);
    CHECK(t.cnn <= 1.0);
    CHECK(t.flow >= 0.0);
    CHECK(t.flow <= 1.0);
    CHECK(t.vit >= 0.0);
    CHECK(t.vit <= 1.0);
  }
}

TEST_CASE("modality selection with tie priority") {
  CHECK(select_modality({0.648, 0.1, 0.05}) == Modality::CNN);
  CHECK(select_modality({0.3, 0.3, 0.1}) == Modality::CNN);
  CHECK(select_modality({0.1, 0.2, 0.7}) == Modality::VIT);
  CHECK(select_modality({0.2, 0.2, 0.2}) == Modality::CNN);
  CHECK(select_modality({0.1, 0.4, 0.4}) == Modality::FLOW);
}

TEST_CASE("selection is invariant under common positive scaling") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    ScoreTriple t{rng.next_double(), rng.next_double(), rng.next_double()};
    const double c = rng.next_range(0.01, 100.0);
    const ScoreTriple scaled{t.cnn * c, t.flow * c, t.vit * c};
    CHECK(select_modality(t) == select_modality(scaled));
  }
}

TEST_CASE("raw eCDF percentile") {
  ResidualHistory h;
  for (double v : {0.1, 0.2, 0.3, 0.4}) h.push(v);
  CHECK(h.percentile_raw(0.35) == doctest::Approx(0.75));

  ResidualHistory empty;
  CHECK(empty.percentile_raw(0.9) == 0.0);
  CHECK(residual_percentile(empty, 0.9) == 0.0);

  ResidualHistory full;
  for (int i = 0; i < 64; ++i) full.push(0.5);
  CHECK(residual_percentile(full, 0.5) == 1.0);
}

TEST_CASE("warm-up forces zero percentile below eight samples") {
  ResidualHistory h;
  for (double v : {0.1, 0.2, 0.3, 0.4}) h.push(v);
  CHECK(residual_percentile(h, 0.35) == 0.0);  // raw value would be 0.75
  for (double v : {0.5, 0.6, 0.7, 0.8}) h.push(v);
  CHECK(residual_percentile(h, 0.35) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("history window is bounded at 64 entries") {
  ResidualHistory h;
  for (int i = 0; i < 100; ++i) h.push(i < 50 ? 0.0 : 1.0);
  CHECK(h.size() == 64);
  // Oldest 36 zero entries fell out: 14 zeros + 50 ones remain.
  CHECK(h.percentile_raw(0.5) == doctest::Approx(14.0 / 64.0));
}

TEST_CASE("percentile is monotone in r") {
  ResidualHistory h;
  Rng rng(9);
  for (int i = 0; i < 40; ++i) h.push(rng.next_double());
  double prev = -1.0;
  for (double r = 0.0; r <= 1.0; r += 0.05) {
    const double q = h.percentile_raw(r);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("refinement trigger") {
  CHECK(refinement_trigger(Modality::VIT, 0.0, 0.90));
  CHECK(refinement_trigger(Modality::CNN, 0.95, 0.90));
  CHECK_FALSE(refinement_trigger(Modality::FLOW, 0.50, 0.90));
}

TEST_CASE("decision surface matches the qualitative regime structure") {
  // High-percentile residuals refine regardless of modality.
  for (auto f : {Modality::CNN, Modality::FLOW, Modality::VIT})
    CHECK(refinement_trigger(f, 0.93, 0.90));
  // Strong coherent motion picks FLOW.
  CHECK(select_modality(fuse_scores(make_signals(0.9, 0.95, 0.9, 0.05, 0.1))) ==
        Modality::FLOW);
  // Weak homogeneous motion picks CNN.
  CHECK(select_modality(fuse_scores(make_signals(0.05, 0.95, 0.9, 0.05, 0.02))) ==
        Modality::CNN);
  // Strong incoherent heterogeneous motion picks VIT.
  CHECK(select_modality(fuse_scores(make_signals(0.8, 0.3, 0.15, 0.6, 0.4))) ==
        Modality::VIT);
}
