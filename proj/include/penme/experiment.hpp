#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "penme/alloc.hpp"
#include "penme/channel.hpp"
#include "penme/codec.hpp"
#include "penme/receiver.hpp"

namespace penme {

struct ExperimentConfig {
  std::vector<std::string> manifests;
  std::vector<double> snr_points_db = {5, 10, 15, 20, 25, 30};
  std::string method = "penme";  // penme | traditional | hybrid
  std::uint64_t seed = 42;
  std::string output_dir = ".";
  std::string dump_dir;  // dump reconstructed frames as PGM when nonempty

  ChannelConfig channel;
  CodecConfig codec;
  ReceiverParams receiver;
  std::array<double, 4> lambda = {1.0, 1.0, 0.5, 2.0};
  double delta = 0.01;
  double xi_min = 0.7;
};

struct ResultRow {
  std::string method;
  double snr_db = 0.0;
  int frame_index = 0;  // global frame counter across the corpus
  std::string modality; // empty for the baselines
  bool skipped = false;
  std::int64_t payload_bits = 0;
  bool delivered = false;
  double ber = 0.0;
  double pdr = 0.0;
  double delay_s = 0.0;
  double throughput_bps = 0.0;
  double energy_j = 0.0;
  double mse = 0.0;
  double psnr_db = 0.0;
  double ms_ssim = 0.0;
  bool refined = false;
};

struct SummaryPoint {
  std::string method;
  double snr_db = 0.0;
  int rows = 0;
  double mean_ber = 0.0;
  double mean_pdr = 0.0;
  double mean_delay_s = 0.0;
  double mean_throughput_bps = 0.0;
  double mean_energy_j = 0.0;
  double mean_mse = 0.0;
  double mean_psnr_db = 0.0;
  double mean_ms_ssim = 0.0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SummaryPoint> summary;
  // Serialized payload bytes offered to the channel, including I-frames,
  // summed over one pass of the corpus (identical across SNR points).
  std::int64_t total_payload_bytes = 0;
  std::string csv_path;
};

// Probes the codec round trip at five delivery fractions on an internal
// calibration clip and returns the monotone delivered-fraction -> MS-SSIM
// lookup used by the allocator.
QualityModel calibrate_quality_model(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string format_summary(const ExperimentResult& result);

// Flat key=value config file. Unknown keys raise Error.
void apply_config_file(const std::string& path, ExperimentConfig& cfg);

std::vector<std::string> find_manifests(const std::string& corpus_dir);

}  // namespace penme
