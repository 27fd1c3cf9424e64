#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "penme/common.hpp"

namespace penme {

// Monotone lookup from delivered-bits fraction to predicted MS-SSIM.
class QualityModel {
 public:
  QualityModel() : points_{{0.0, 0.0}, {1.0, 1.0}} {}
  explicit QualityModel(std::vector<std::pair<double, double>> points);

  double predict(double delivered_fraction) const;

 private:
  std::vector<std::pair<double, double>> points_;  // sorted, nondecreasing
};

struct AllocationProblem {
  std::array<double, 4> weights = {1.0, 1.0, 0.5, 2.0};  // lambda 1..4
  std::int64_t payload_bits = 0;
  double semantic_cost = 0.0;   // S_t proxy: 1 - max modality score
  double quality_floor = 0.7;   // xi_min
  double channel_gain = 1.0;    // h_t
  double noise_density = 3.9810717055349857e-21;  // N0
  double rb_bandwidth = 2e6;
  int max_rbs = 10;
  double max_power = 1.0;
  double slot_time_s = 1.0 / 30.0;
  double prediction_error = 0.0;  // |R_t - R_{t-1}|^2 proxy
  double delta = 0.01;
  QualityModel quality_model;
};

struct AllocationResult {
  int rbs_used = 0;
  double power_w = 0.0;
  double rate_bps = 0.0;
  std::array<double, 3> multipliers = {0.0, 0.0, 0.0};
  bool feasible = false;
  double objective = 0.0;
  std::string diagnostic;
};

struct KktReport {
  double primal_residual = 0.0;       // worst constraint violation (normalized)
  double dual_residual = 0.0;         // worst negative multiplier
  double slackness_residual = 0.0;    // worst |mu_i * slack_i| (normalized)
  double stationarity_residual = 0.0; // |dL/dP| at the solution
  bool ok = false;
};

struct AllocPoint {
  double rbs = 0.0;  // B, continuous for evaluation purposes
  double power = 0.0;
  double quality = 0.0;
};

// Lagrangian value at a point with given multipliers.
double lagrangian(const AllocationProblem& prob, const AllocPoint& point,
                  const std::array<double, 3>& mults);

// Enumerates B, closes the capacity constraint for the minimum power, and
// picks the feasible candidate with the least objective.
AllocationResult allocate(const AllocationProblem& prob);

KktReport kkt_check(const AllocationProblem& prob, const AllocationResult& res,
                    double tol);

}  // namespace penme
