#pragma once

#include <cstdint>
#include <vector>

#include "penme/common.hpp"
#include "penme/rng.hpp"

namespace penme {

struct ChannelConfig {
  int num_rbs = 10;
  double rb_bandwidth_hz = 2e6;
  double total_power_w = 1.0;
  double noise_density_w_per_hz = 3.9810717055349857e-21;  // -174 dBm/Hz
  double snr_db = 20.0;
  double plr = 0.025;
  bool fading = true;  // AWGN + Rayleigh when true, AWGN only otherwise
  double zeta = 0.8;   // coding/modulation inefficiency factor
  int harq_max = 3;
  int mtu_bytes = 1500;
  int overhead_bytes = 10;
  double slot_s = 1e-4;      // transmission slot granularity
  double channel_gain = 1.0; // planning-side gain h
  bool paper_literal_power = false;  // divide by h with N0 alone
  int token_bits = 80;       // carried from the parameter table; unused
  std::uint64_t seed = 0;
};

struct Packet {
  std::uint32_t seq_no = 0;
  std::uint32_t payload_bytes = 0;
};

struct LinkReport {
  std::int64_t bits_offered = 0;
  std::int64_t bits_delivered = 0;
  int packets_total = 0;
  int packets_dropped = 0;
  int retransmissions = 0;
  double ber_analytic = 0.0;
  double pdr = 0.0;
  double delay_s = 0.0;
  double throughput_bps = 0.0;
  double energy_j = 0.0;
  double power_w = 0.0;
};

struct TransmitResult {
  std::vector<bool> delivered;
  LinkReport report;
};

// Gaussian tail probability Q(x) = 0.5 * erfc(x / sqrt(2)).
double qfunc(double x);

// erfc via the alternating Maclaurin series of erf below x = 3 and the
// Laplace continued fraction above; relative error < 1e-12 over the range
// exercised here (checked against a long-double oracle in the tests).
double erfc_approx(double x);

// BER = (4 / log2 M) * Q(sqrt(3 log2 M / (M - 1) * snr)); M in {16, 64, 256}.
double mqam_ber(int m, double snr_linear);

// Adaptive modulation order: 16 below 12 dB, 64 below 22 dB, 256 above.
int select_modulation(double snr_db);

// C = B * log2(1 + snr) * zeta.
double shannon_capacity(double bandwidth_hz, double snr_linear, double zeta);

// P = (2^(bits / (B*T)) - 1) * N / h with N = N0 * B (or N0 alone when
// paper_literal is set).
double min_power_for_load(std::int64_t total_bits, double bandwidth_hz,
                          double time_s, double channel_gain,
                          double noise_density, bool paper_literal = false);

double transmission_energy(double power_w, double time_s);

std::vector<Packet> packetize(const std::vector<std::uint8_t>& payload,
                              const ChannelConfig& cfg);

// Per-attempt model: optional Rayleigh power gain, adaptive modulation at the
// faded SNR, bit errors aggregated to a packet error probability, an
// independent Bernoulli(plr) erasure, and up to harq_max retransmissions.
// Packet randomness is keyed by (stream_key, seq_no), so a packet's draws do
// not depend on its neighbors' retry counts.
TransmitResult transmit_with_harq(const std::vector<Packet>& packets,
                                  const ChannelConfig& cfg,
                                  std::uint64_t stream_key);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace penme
