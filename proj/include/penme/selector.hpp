#pragma once

#include <deque>
#include <string>

#include "penme/motion.hpp"

namespace penme {

enum class Modality { CNN = 0, FLOW = 1, VIT = 2 };

std::string to_string(Modality m);

struct ScoreTriple {
  double cnn = 0.0;
  double flow = 0.0;
  double vit = 0.0;
};

// Bounded FIFO of recent residual scalars backing the eCDF percentile.
class ResidualHistory {
 public:
  static constexpr size_t kCapacity = 64;

  void push(double r) {
    if (window_.size() == kCapacity) window_.pop_front();
    window_.push_back(r);
  }

  size_t size() const { return window_.size(); }

  // Raw eCDF rank: |{x <= r}| / |window|; 0 for an empty window.
  double percentile_raw(double r) const {
    if (window_.empty()) return 0.0;
    size_t count = 0;
    for (double x : window_)
      if (x <= r) ++count;
    return static_cast<double>(count) / static_cast<double>(window_.size());
  }

  // Fraction of samples strictly below r (used by the GOP skip rule).
  double rank_below(double r) const {
    if (window_.empty()) return 0.0;
    size_t count = 0;
    for (double x : window_)
      if (x < r) ++count;
    return static_cast<double>(count) / static_cast<double>(window_.size());
  }

 private:
  std::deque<double> window_;
};

// Model scores from the five signals.
ScoreTriple fuse_scores(const MotionSignals& s);

// Argmax with tie priority CNN > FLOW > VIT.
Modality select_modality(const ScoreTriple& scores);

// eCDF percentile with a warm-up rule: below kWarmupSamples the percentile
// reports 0 so only the ViT disjunct can trigger refinement early. The
// caller appends r to the history afterwards.
inline constexpr size_t kWarmupSamples = 8;
double residual_percentile(const ResidualHistory& h, double r);

// delta_t = 1[(f = ViT) or (rq >= tau_rq)].
bool refinement_trigger(Modality f, double rq, double tau_rq);

}  // namespace penme
