#include "penme/channel.hpp"

#include <cmath>

namespace penme {

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730950488;

double erf_series(double x) {
  // erf(x) = (2/sqrt(pi)) * sum (-1)^n x^(2n+1) / (n! (2n+1))
  double power = x;  // (-1)^n x^(2n+1) / n!
  double sum = x;
  for (int n = 1; n < 80; ++n) {
    power *= -x * x / n;
    const double term = power / (2 * n + 1);
    sum += term;
    if (std::abs(term) < 1e-20 * std::abs(sum)) break;
  }
  return 2.0 / kSqrtPi * sum;
}

double erfc_cf(double x) {
  // Laplace continued fraction, evaluated backward at fixed depth:
  // erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  double tail = 0.0;
  for (int k = 150; k >= 1; --k) tail = (k * 0.5) / (x + tail);
  return std::exp(-x * x) / kSqrtPi / (x + tail);
}
}  // namespace

double erfc_approx(double x) {
  // The series loses one digit per unit of x^2 to cancellation, so hand off
  // to the continued fraction early.
  if (x < 0.0) return 2.0 - erfc_approx(-x);
  if (x < 2.0) return 1.0 - erf_series(x);
  return erfc_cf(x);
}

double qfunc(double x) {
  if (!std::isfinite(x)) throw Error("qfunc: non-finite argument");
  return 0.5 * erfc_approx(x / kSqrt2);
}

double mqam_ber(int m, double snr_linear) {
  if (m != 16 && m != 64 && m != 256)
    throw Error("mqam_ber: unsupported modulation order");
  if (snr_linear < 0.0) throw Error("mqam_ber: negative snr");
  const double k = std::log2(static_cast<double>(m));
  return 4.0 / k * qfunc(std::sqrt(3.0 * k / (m - 1) * snr_linear));
}

int select_modulation(double snr_db) {
  if (snr_db < 12.0) return 16;
  if (snr_db < 22.0) return 64;
  return 256;
}

double shannon_capacity(double bandwidth_hz, double snr_linear, double zeta) {
  if (bandwidth_hz <= 0.0) throw Error("shannon_capacity: nonpositive bandwidth");
  if (snr_linear < 0.0) throw Error("shannon_capacity: negative snr");
  if (zeta <= 0.0 || zeta > 1.0) throw Error("shannon_capacity: zeta out of (0,1]");
  return bandwidth_hz * std::log2(1.0 + snr_linear) * zeta;
}

double min_power_for_load(std::int64_t total_bits, double bandwidth_hz,
                          double time_s, double channel_gain,
                          double noise_density, bool paper_literal) {
  if (total_bits < 0 || bandwidth_hz <= 0.0 || time_s <= 0.0 ||
      channel_gain <= 0.0 || noise_density <= 0.0)
    throw Error("min_power_for_load: invalid argument");
  const double exponent = static_cast<double>(total_bits) / (bandwidth_hz * time_s);
  if (exponent > 60.0) throw Error("min_power_for_load: exponent overflow");
  const double noise = paper_literal ? noise_density : noise_density * bandwidth_hz;
  return (std::exp2(exponent) - 1.0) * noise / channel_gain;
}

double transmission_energy(double power_w, double time_s) {
  if (power_w < 0.0 || time_s < 0.0)
    throw Error("transmission_energy: negative input");
  return power_w * time_s;
}

std::vector<Packet> packetize(const std::vector<std::uint8_t>& payload,
                              const ChannelConfig& cfg) {
  if (payload.empty()) throw Error("packetize: empty payload");
  const int capacity = cfg.mtu_bytes - cfg.overhead_bytes;
  if (capacity <= 0) throw Error("packetize: overhead exceeds MTU");
  std::vector<Packet> packets;
  size_t off = 0;
  std::uint32_t seq = 0;
  while (off < payload.size()) {
    const size_t take = std::min(static_cast<size_t>(capacity), payload.size() - off);
    packets.push_back(Packet{seq++, static_cast<std::uint32_t>(take)});
    off += take;
  }
  return packets;
}

TransmitResult transmit_with_harq(const std::vector<Packet>& packets,
                                  const ChannelConfig& cfg,
                                  std::uint64_t stream_key) {
  TransmitResult res;
  res.delivered.assign(packets.size(), false);
  LinkReport& rep = res.report;
  rep.packets_total = static_cast<int>(packets.size());
  if (packets.empty()) return res;

  const double snr_nom = db_to_linear(cfg.snr_db);
  const double band_hz = cfg.num_rbs * cfg.rb_bandwidth_hz;
  const double cap_nom = shannon_capacity(band_hz, snr_nom, cfg.zeta);
  if (cap_nom <= 0.0) throw Error("transmit: zero nominal capacity");
  rep.ber_analytic = mqam_ber(select_modulation(cfg.snr_db), snr_nom);

  double total_time = 0.0;
  int total_attempts = 0;
  for (size_t i = 0; i < packets.size(); ++i) {
    const std::int64_t wire_bits =
        8LL * (packets[i].payload_bytes + cfg.overhead_bytes);
    rep.bits_offered += wire_bits;

    // The transmitter schedules at the rate implied by the nominal SNR;
    // fading then only moves the error probability.
    const double tx_time = static_cast<double>(wire_bits) / cap_nom;
    const int slots = static_cast<int>(std::ceil(tx_time / cfg.slot_s));
    const double t_attempt = slots * cfg.slot_s;
    const double p_attempt =
        min_power_for_load(wire_bits, band_hz, t_attempt, cfg.channel_gain,
                           cfg.noise_density_w_per_hz, cfg.paper_literal_power);

    Rng rng = Rng::derive(stream_key, packets[i].seq_no);
    bool ok = false;
    for (int attempt = 0; attempt <= cfg.harq_max && !ok; ++attempt) {
      const double u_fade = rng.next_open_double();
      const double u_erase = rng.next_double();
      const double u_bit = rng.next_double();

      ++total_attempts;
      total_time += t_attempt;
      rep.energy_j += transmission_energy(p_attempt, t_attempt);

      const double gain = cfg.fading ? -std::log(u_fade) : 1.0;  // |g|^2, Exp(1)
      const double snr_eff = snr_nom * gain;
      const int order = select_modulation(linear_to_db(std::max(snr_eff, 1e-300)));
      const double ber = mqam_ber(order, snr_eff);
      // 1 - (1 - ber)^bits without catastrophic cancellation.
      const double p_err =
          -std::expm1(static_cast<double>(wire_bits) * std::log1p(-ber));

      ok = u_erase >= cfg.plr && u_bit >= p_err;
    }
    if (ok) {
      res.delivered[i] = true;
      rep.bits_delivered += wire_bits;
    } else {
      ++rep.packets_dropped;
    }
  }

  rep.retransmissions = total_attempts - rep.packets_total;
  rep.pdr = static_cast<double>(rep.packets_dropped) / rep.packets_total;
  rep.delay_s = total_time / rep.packets_total;
  rep.throughput_bps = total_time > 0.0 ? rep.bits_delivered / total_time : 0.0;
  rep.power_w = total_time > 0.0 ? rep.energy_j / total_time : 0.0;
  return res;
}

}  // namespace penme
