#include "penme/alloc.hpp"

#include <algorithm>
#include <cmath>

namespace penme {

QualityModel::QualityModel(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
  if (points_.empty()) throw Error("quality model: no points");
  std::sort(points_.begin(), points_.end());
  // Enforce monotonicity by running maximum; the probe that builds the model
  // can be slightly non-monotone.
  double best = 0.0;
  for (auto& [f, q] : points_) {
    q = clamp01(std::max(q, best));
    best = q;
  }
}

double QualityModel::predict(double delivered_fraction) const {
  const double f = clamp01(delivered_fraction);
  if (f <= points_.front().first) return points_.front().second;
  if (f >= points_.back().first) return points_.back().second;
  for (size_t i = 1; i < points_.size(); ++i) {
    if (f <= points_[i].first) {
      const auto& [f0, q0] = points_[i - 1];
      const auto& [f1, q1] = points_[i];
      if (f1 == f0) return q1;
      return q0 + (q1 - q0) * (f - f0) / (f1 - f0);
    }
  }
  return points_.back().second;
}

namespace {

double required_rate(const AllocationProblem& prob) {
  return static_cast<double>(prob.payload_bits) / prob.slot_time_s;
}

double capacity_bps(const AllocationProblem& prob, double rbs, double power) {
  const double band = rbs * prob.rb_bandwidth;
  const double noise = prob.noise_density * band;
  return band * std::log2(1.0 + power * prob.channel_gain / noise);
}

// Minimum power putting the capacity constraint on its boundary.
double min_power(const AllocationProblem& prob, int rbs, double rate,
                 bool& overflow) {
  const double band = rbs * prob.rb_bandwidth;
  const double exponent = rate / band;
  if (exponent > 60.0) {
    overflow = true;
    return 0.0;
  }
  overflow = false;
  const double noise = prob.noise_density * band;
  return (std::exp2(exponent) - 1.0) * noise / prob.channel_gain;
}

double objective_value(const AllocationProblem& prob, double rate, double power,
                       double quality) {
  return prob.weights[0] * rate + prob.weights[1] * power +
         prob.weights[2] * prob.semantic_cost + prob.weights[3] * (1.0 - quality);
}

}  // namespace

double lagrangian(const AllocationProblem& prob, const AllocPoint& point,
                  const std::array<double, 3>& mults) {
  const double rate = required_rate(prob);
  double value = objective_value(prob, rate, point.power, point.quality);
  value += mults[0] * (prob.prediction_error - prob.delta);
  value += mults[1] * (rate - capacity_bps(prob, point.rbs, point.power));
  value += mults[2] * (prob.quality_floor - point.quality);
  return value;
}

AllocationResult allocate(const AllocationProblem& prob) {
  AllocationResult res;
  if (prob.max_rbs < 1 || prob.rb_bandwidth <= 0.0 || prob.slot_time_s <= 0.0 ||
      prob.channel_gain <= 0.0 || prob.noise_density <= 0.0) {
    res.diagnostic = "ill-formed problem";
    return res;
  }
  if (prob.prediction_error > prob.delta) {
    res.diagnostic = "motion prediction error exceeds delta";
    return res;
  }
  const double quality = prob.quality_model.predict(1.0);
  if (quality < prob.quality_floor) {
    res.diagnostic = "predicted quality below floor";
    return res;
  }

  const double rate = required_rate(prob);
  bool any = false;
  for (int b = 1; b <= prob.max_rbs; ++b) {
    bool overflow = false;
    const double p = min_power(prob, b, rate, overflow);
    if (overflow || p > prob.max_power) continue;
    const double obj = objective_value(prob, rate, p, quality);
    if (!any || obj < res.objective) {
      any = true;
      res.rbs_used = b;
      res.power_w = p;
      res.objective = obj;
    }
  }
  if (!any) {
    res.diagnostic = "no RB count satisfies the power budget";
    return res;
  }

  res.feasible = true;
  res.rate_bps = rate;
  // Multiplier recovery. The capacity constraint is active by construction,
  // so mu2 comes from stationarity in P; the other two constraints hold
  // strictly here, so complementary slackness forces their multipliers to 0.
  const double band = res.rbs_used * prob.rb_bandwidth;
  const double noise = prob.noise_density * band;
  const double dcap_dp = band * prob.channel_gain /
                         (std::log(2.0) * (noise + res.power_w * prob.channel_gain));
  res.multipliers = {0.0, prob.weights[1] / dcap_dp, 0.0};
  return res;
}

KktReport kkt_check(const AllocationProblem& prob, const AllocationResult& res,
                    double tol) {
  KktReport rep;
  if (!res.feasible) return rep;

  const double rate = required_rate(prob);
  const double quality = prob.quality_model.predict(1.0);

  // Primal feasibility. Slacks are kept in natural units; the capacity slack
  // at the solution is a float round-trip residual orders below tolerance.
  const double pred_slack = prob.prediction_error - prob.delta;  // <= 0 wanted
  const double cap = capacity_bps(prob, res.rbs_used, res.power_w);
  const double cap_slack = rate - cap;
  const double quality_slack = prob.quality_floor - quality;
  const double box_power = std::max(res.power_w - prob.max_power, -res.power_w);
  rep.primal_residual = std::max({pred_slack, cap_slack, quality_slack, box_power,
                                  static_cast<double>(1 - res.rbs_used),
                                  static_cast<double>(res.rbs_used - prob.max_rbs)});

  rep.dual_residual = std::max({-res.multipliers[0], -res.multipliers[1],
                                -res.multipliers[2], 0.0});

  // Complementary slackness on the raw slacks. mu2 is O(1/dcap_dp), so this
  // product is only nonzero when capacity is genuinely slack.
  rep.slackness_residual =
      std::max({std::abs(res.multipliers[0] * pred_slack),
                std::abs(res.multipliers[1] * cap_slack),
                std::abs(res.multipliers[2] * quality_slack)});

  // Stationarity along P via central differences. Only the P-dependent part
  // of L enters the difference; the remaining terms are constants that would
  // otherwise swamp the quotient with cancellation noise at rate scale.
  const double band = res.rbs_used * prob.rb_bandwidth;
  const double noise = prob.noise_density * band;
  auto partial = [&](double p) {
    return prob.weights[1] * p -
           res.multipliers[1] * band *
               std::log2(1.0 + p * prob.channel_gain / noise);
  };
  const double h = std::max(1e-9, 1e-6 * std::abs(res.power_w));
  const double grad = (partial(res.power_w + h) - partial(res.power_w - h)) / (2.0 * h);
  const bool on_boundary = res.power_w <= 0.0 || res.power_w >= prob.max_power;
  rep.stationarity_residual = on_boundary ? std::max(0.0, -grad) : std::abs(grad);

  rep.ok = rep.primal_residual <= tol && rep.dual_residual <= tol &&
           rep.slackness_residual <= tol && rep.stationarity_residual <= tol;
  return rep;
}

}  // namespace penme
