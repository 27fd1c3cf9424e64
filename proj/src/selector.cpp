#include "penme/selector.hpp"

namespace penme {

std::string to_string(Modality m) {
  switch (m) {
    case Modality::CNN: return "CNN";
    case Modality::FLOW: return "FLOW";
    case Modality::VIT: return "VIT";
  }
  return "?";
}

ScoreTriple fuse_scores(const MotionSignals& s) {
  ScoreTriple t;
  const double m = s.strength;
  const double cg = s.consistency;
  const double sh = s.sharpness;
  const double h = s.heterogeneity;
  const double r = s.residual;
  t.cnn = (1.0 - m) * (1.0 - h) * cg;
  t.flow = m * cg * sh * (1.0 - h);
  t.vit = m * (1.0 - cg * sh) * (h + r - h * r);
  return t;
}

Modality select_modality(const ScoreTriple& scores) {
  // Strict inequality keeps the CNN > FLOW > VIT tie priority.
  Modality best = Modality::CNN;
  double top = scores.cnn;
  if (scores.flow > top) {
    top = scores.flow;
    best = Modality::FLOW;
  }
  if (scores.vit > top) best = Modality::VIT;
  return best;
}

double residual_percentile(const ResidualHistory& h, double r) {
  if (h.size() < kWarmupSamples) return 0.0;
  return h.percentile_raw(r);
}

bool refinement_trigger(Modality f, double rq, double tau_rq) {
  return f == Modality::VIT || rq >= tau_rq;
}

}  // namespace penme
