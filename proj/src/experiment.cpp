#include "penme/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "penme/metrics.hpp"
#include "penme/synth.hpp"

namespace penme {

namespace fs = std::filesystem;

namespace {

int method_id(const std::string& m) {
  if (m == "penme") return 0;
  if (m == "traditional") return 1;
  if (m == "hybrid") return 2;
  throw Error("unknown method: " + m);
}

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("float formatting failed");
  return std::string(buf, ptr);
}

std::string csv_line(const ResultRow& r) {
  std::ostringstream os;
  os << r.method << ',' << format_double(r.snr_db) << ',' << r.frame_index << ','
     << r.modality << ',' << (r.skipped ? 1 : 0) << ',' << r.payload_bits << ','
     << (r.delivered ? 1 : 0) << ',' << format_double(r.ber) << ','
     << format_double(r.pdr) << ',' << format_double(r.delay_s) << ','
     << format_double(r.throughput_bps) << ',' << format_double(r.energy_j) << ','
     << format_double(r.mse) << ',' << format_double(r.psnr_db) << ','
     << format_double(r.ms_ssim) << ',' << (r.refined ? 1 : 0) << '\n';
  return os.str();
}

constexpr const char* kCsvHeader =
    "method,snr_db,frame_index,modality,skipped,payload_bits,delivered,ber,pdr,"
    "delay_s,throughput_bps,energy_j,mse,psnr_db,ms_ssim,refined\n";

// Planning-side channel gain consistent with the swept wideband SNR: full
// power across all RBs reproduces snr_linear.
double planning_gain(const ChannelConfig& ch, double snr_linear) {
  const double band = ch.num_rbs * ch.rb_bandwidth_hz;
  return snr_linear * ch.noise_density_w_per_hz * band / ch.total_power_w;
}

struct LinkOutcome {
  bool frame_delivered = true;
  LinkReport report;
};

// Transmit one serialized payload; the frame survives only if every packet
// does (all-or-nothing payloads).
LinkOutcome send_payload(const std::vector<std::uint8_t>& bytes,
                         const ChannelConfig& ch, int rbs,
                         std::uint64_t stream_key) {
  ChannelConfig cfg = ch;
  cfg.num_rbs = rbs;
  const auto packets = packetize(bytes, cfg);
  TransmitResult tr = transmit_with_harq(packets, cfg, stream_key);
  LinkOutcome out;
  out.report = tr.report;
  out.frame_delivered = tr.report.packets_dropped == 0;
  return out;
}

// 8-bit raster payload used by the raw baselines.
std::vector<std::uint8_t> raw_frame_bytes(const Frame& f) {
  std::vector<std::uint8_t> out(f.pixels.size());
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<std::uint8_t>(std::lround(clamp01(f.pixels[i]) * 255.0));
  return out;
}

Frame frame_from_raw(const std::vector<std::uint8_t>& bytes, int w, int h) {
  Frame f(w, h);
  for (size_t i = 0; i < f.pixels.size(); ++i) f.pixels[i] = bytes[i] / 255.0;
  return f;
}

std::int8_t to_i8(double v) {
  return static_cast<std::int8_t>(std::clamp(std::lround(v), -127L, 127L));
}

// Hybrid P-frame: concatenated per-pixel features of the three extractor
// stand-ins at original resolution (one residual plane, two motion-field
// planes, one temporal-difference plane) behind a 6-byte header. Only the
// residual plane participates in decoding; the rest reproduce the baseline's
// transmission cost.
std::vector<std::uint8_t> hybrid_frame_bytes(const Frame& prev_recon,
                                             const Frame& next,
                                             const BlockField& field) {
  const int w = next.width;
  const int h = next.height;
  std::vector<std::uint8_t> out;
  out.reserve(6 + 4 * static_cast<size_t>(w) * h);
  out.push_back('H');
  out.push_back('Y');
  out.push_back(static_cast<std::uint8_t>(w & 0xFF));
  out.push_back(static_cast<std::uint8_t>(w >> 8));
  out.push_back(static_cast<std::uint8_t>(h & 0xFF));
  out.push_back(static_cast<std::uint8_t>(h >> 8));
  // Plane A: residual vs previous reconstruction, 8-bit over [-1, 1].
  for (size_t i = 0; i < next.pixels.size(); ++i)
    out.push_back(static_cast<std::uint8_t>(
        quantize_residual(next.pixels[i] - prev_recon.pixels[i], 8)));
  // Planes B1/B2: dense motion proxy replicated from the working-domain
  // block field, rescaled to original-resolution pixels.
  const double sx = static_cast<double>(w) / kWorkingSize;
  const double sy = static_cast<double>(h) / kWorkingSize;
  for (int plane = 0; plane < 2; ++plane)
    for (int y = 0; y < h; ++y) {
      const int by = std::min(static_cast<int>(y / (kBlockSize * sy)),
                              field.grid_h - 1);
      for (int x = 0; x < w; ++x) {
        const int bx = std::min(static_cast<int>(x / (kBlockSize * sx)),
                                field.grid_w - 1);
        const Vec2i v = field.at(bx, by);
        out.push_back(static_cast<std::uint8_t>(
            plane == 0 ? to_i8(v.x * sx) : to_i8(v.y * sy)));
      }
    }
  // Plane C: absolute temporal difference, 8-bit.
  for (size_t i = 0; i < next.pixels.size(); ++i)
    out.push_back(static_cast<std::uint8_t>(
        std::lround(std::abs(next.pixels[i] - prev_recon.pixels[i]) * 255.0)));
  return out;
}

Frame hybrid_decode(const Frame& prev_recon, const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 6 || bytes[0] != 'H' || bytes[1] != 'Y')
    throw Error("hybrid payload: bad header");
  const int w = bytes[2] | (bytes[3] << 8);
  const int h = bytes[4] | (bytes[5] << 8);
  if (w != prev_recon.width || h != prev_recon.height)
    throw Error("hybrid payload: dimension mismatch");
  const size_t n = static_cast<size_t>(w) * h;
  if (bytes.size() != 6 + 4 * n) throw Error("hybrid payload: size mismatch");
  Frame out(w, h);
  for (size_t i = 0; i < n; ++i)
    out.pixels[i] =
        clamp01(prev_recon.pixels[i] + dequantize_residual(bytes[6 + i], 8));
  return out;
}

struct RowAccumulator {
  std::map<std::pair<std::string, double>, SummaryPoint> points;

  void add(const ResultRow& r) {
    auto& p = points[{r.method, r.snr_db}];
    p.method = r.method;
    p.snr_db = r.snr_db;
    ++p.rows;
    p.mean_ber += r.ber;
    p.mean_pdr += r.pdr;
    p.mean_delay_s += r.delay_s;
    p.mean_throughput_bps += r.throughput_bps;
    p.mean_energy_j += r.energy_j;
    p.mean_mse += r.mse;
    p.mean_psnr_db += r.psnr_db;
    p.mean_ms_ssim += r.ms_ssim;
  }

  std::vector<SummaryPoint> finish() {
    std::vector<SummaryPoint> out;
    for (auto& [key, p] : points) {
      const double n = std::max(1, p.rows);
      p.mean_ber /= n;
      p.mean_pdr /= n;
      p.mean_delay_s /= n;
      p.mean_throughput_bps /= n;
      p.mean_energy_j /= n;
      p.mean_mse /= n;
      p.mean_psnr_db /= n;
      p.mean_ms_ssim /= n;
      out.push_back(p);
    }
    return out;
  }
};

void dump_frame(const ExperimentConfig& cfg, const std::string& method,
                double snr, int seq, int frame, const Frame& f) {
  if (cfg.dump_dir.empty()) return;
  fs::create_directories(cfg.dump_dir);
  char name[128];
  std::snprintf(name, sizeof(name), "%s_snr%g_seq%02d_f%d.pgm", method.c_str(),
                snr, seq, frame);
  write_pgm(f, (fs::path(cfg.dump_dir) / name).string());
}

AllocationResult allocate_for_frame(const ExperimentConfig& cfg,
                                    double snr_linear, std::int64_t bits,
                                    double semantic_cost, double pred_err,
                                    double fps, const QualityModel& qm) {
  AllocationProblem prob;
  prob.weights = cfg.lambda;
  prob.payload_bits = bits;
  prob.semantic_cost = semantic_cost;
  prob.quality_floor = cfg.xi_min;
  prob.channel_gain = planning_gain(cfg.channel, snr_linear);
  prob.noise_density = cfg.channel.noise_density_w_per_hz;
  prob.rb_bandwidth = cfg.channel.rb_bandwidth_hz;
  prob.max_rbs = cfg.channel.num_rbs;
  prob.max_power = cfg.channel.total_power_w;
  prob.slot_time_s = 1.0 / fps;
  prob.prediction_error = pred_err;
  prob.delta = cfg.delta;
  prob.quality_model = qm;
  AllocationResult res = allocate(prob);
  if (!res.feasible) {
    // Keep the pipeline alive: fall back to the full allocation.
    res.rbs_used = cfg.channel.num_rbs;
    res.power_w = cfg.channel.total_power_w;
  }
  return res;
}

}  // namespace

QualityModel calibrate_quality_model(const ExperimentConfig& cfg) {
  // Reconstruct the calibration clip with the leading fraction of P-frames
  // delivered and map fraction -> mean MS-SSIM.
  const auto clip = make_smooth_translation_clip(cfg.seed ^ 0xCA11);
  std::vector<Frame> working;
  for (const auto& f : clip) working.push_back(to_working_domain(f));

  std::vector<std::pair<double, double>> points;
  const int n_payload = static_cast<int>(clip.size()) - 1;
  for (const double fraction : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const int delivered = static_cast<int>(std::lround(fraction * n_payload));
    ReconstructionState state =
        init_state(decode_iframe(encode_iframe(working[0])), kCorpusWidth,
                   kCorpusHeight);
    ReceiverParams params = cfg.receiver;
    double sum = 0.0;
    Frame ref_prev = working[0];
    for (int t = 1; t < static_cast<int>(clip.size()); ++t) {
      const MotionSignals s = analyze_pair(ref_prev, working[t]);
      const ScoreTriple scores = fuse_scores(s);
      const Modality f = select_modality(scores);
      std::optional<ResidualPayload> payload;
      if (t <= delivered)
        payload = encode_frame(state.prev_recon, working[t], s, f, cfg.codec);
      const ReconstructionOutput out = reconstruct_frame(state, payload, params);
      sum += ms_ssim(clip[t], out.frame);
      ref_prev = working[t];
    }
    points.emplace_back(fraction, sum / n_payload);
  }
  return QualityModel(points);
}

std::vector<std::string> find_manifests(const std::string& corpus_dir) {
  std::vector<std::string> out;
  if (!fs::is_directory(corpus_dir))
    throw Error(corpus_dir + ": not a directory");
  for (const auto& e : fs::directory_iterator(corpus_dir))
    if (e.path().extension() == ".manifest") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(corpus_dir + ": no .manifest files");
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.manifests.empty()) throw Error("experiment: no sequences configured");
  if (cfg.snr_points_db.empty()) throw Error("experiment: no SNR points");
  const int mid = method_id(cfg.method);

  fs::create_directories(cfg.output_dir);
  const std::string csv_path = (fs::path(cfg.output_dir) / "results.csv").string();
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw Error(csv_path + ": cannot open for writing");
  csv << kCsvHeader;

  const QualityModel qm = calibrate_quality_model(cfg);

  ExperimentResult result;
  result.csv_path = csv_path;
  RowAccumulator acc;

  // Pre-load sequences once.
  struct Sequence {
    std::vector<Frame> original;
    std::vector<Frame> working;
    double fps;
  };
  std::vector<Sequence> sequences;
  for (const auto& path : cfg.manifests) {
    Sequence s;
    const SequenceManifest m = read_manifest(path);
    s.original = load_sequence(path);
    s.fps = m.fps;
    for (const auto& f : s.original) s.working.push_back(to_working_domain(f));
    sequences.push_back(std::move(s));
  }

  bool counted_bytes = false;
  for (const double snr_db : cfg.snr_points_db) {
    const double snr_linear = db_to_linear(snr_db);
    ChannelConfig ch = cfg.channel;
    ch.snr_db = snr_db;
    ch.channel_gain = planning_gain(cfg.channel, snr_linear);

    // GOP skip history accumulates across sequences but resets per SNR
    // point: the plan must not depend on SNR, or the packet layout would
    // stop being comparable across the sweep.
    ResidualHistory gop_history;
    int global_frame = 0;
    for (size_t seq = 0; seq < sequences.size(); ++seq) {
      const Sequence& S = sequences[seq];
      const int n = static_cast<int>(S.original.size());
      const int ow = S.original[0].width;
      const int oh = S.original[0].height;

      // Channel randomness is keyed by (seed, method, sequence, frame) and
      // deliberately not by SNR: identical draws across the sweep make the
      // delivered set monotone in SNR.
      auto stream_key = [&](int frame) {
        return Rng::derive(cfg.seed, static_cast<std::uint64_t>(mid),
                           static_cast<std::uint64_t>(seq),
                           static_cast<std::uint64_t>(frame))
            .next_u64();
      };

      if (cfg.method == "penme") {
        // Transmitter-side signal pass over true consecutive pairs.
        std::vector<MotionSignals> pair_signals;
        for (int t = 1; t < n; ++t)
          pair_signals.push_back(analyze_pair(S.working[t - 1], S.working[t]));
        CodecConfig codec = cfg.codec;
        const auto plan = gop_plan(pair_signals, codec, gop_history);

        // I-frame.
        const auto ibytes = encode_iframe(S.working[0]);
        if (!counted_bytes)
          result.total_payload_bytes += static_cast<std::int64_t>(ibytes.size());
        const AllocationResult ialloc = allocate_for_frame(
            cfg, snr_linear, static_cast<std::int64_t>(ibytes.size()) * 8, 0.0,
            0.0, S.fps, qm);
        const LinkOutcome ilink =
            send_payload(ibytes, ch, ialloc.rbs_used, stream_key(0));
        ReconstructionState state = init_state(
            ilink.frame_delivered ? decode_iframe(ibytes)
                                  : Frame(kWorkingSize, kWorkingSize, 0.5),
            ow, oh);
        dump_frame(cfg, cfg.method, snr_db, static_cast<int>(seq), 0,
                   upscale(state.prev_recon, ow, oh));

        int last_sent = 0;  // index of the last transmitted source frame
        double prev_residual = 0.0;
        bool have_prev_residual = false;
        for (int t = 1; t < n; ++t) {
          ++global_frame;
          ResultRow row;
          row.method = cfg.method;
          row.snr_db = snr_db;
          row.frame_index = global_frame;

          if (plan[t] == GopDecision::Skip) {
            row.skipped = true;
            row.delivered = true;
            const ReconstructionOutput out = reconstruct_skipped(state);
            dump_frame(cfg, cfg.method, snr_db, static_cast<int>(seq), t, out.frame);
            const QualityReport q = score_frames(S.original[t], out.frame);
            row.mse = q.mse;
            row.psnr_db = q.psnr_db;
            row.ms_ssim = q.ms_ssim;
            csv << csv_line(row);
            acc.add(row);
            result.rows.push_back(row);
            continue;
          }

          const MotionSignals s =
              last_sent == t - 1
                  ? pair_signals[t - 1]
                  : analyze_pair(S.working[last_sent], S.working[t]);
          const ScoreTriple scores = fuse_scores(s);
          const Modality f = select_modality(scores);
          const ResidualPayload payload =
              encode_frame(state.prev_recon, S.working[t], s, f, codec);
          const auto bytes = serialize_payload(payload);
          if (!counted_bytes)
            result.total_payload_bytes += static_cast<std::int64_t>(bytes.size());

          const double max_score = std::max({scores.cnn, scores.flow, scores.vit});
          const double pred_err =
              have_prev_residual
                  ? (s.residual - prev_residual) * (s.residual - prev_residual)
                  : 0.0;
          prev_residual = s.residual;
          have_prev_residual = true;
          const AllocationResult alloc =
              allocate_for_frame(cfg, snr_linear, payload_bits(payload),
                                 1.0 - max_score, pred_err, S.fps, qm);

          const LinkOutcome link =
              send_payload(bytes, ch, alloc.rbs_used, stream_key(t));
          row.modality = to_string(f);
          row.skipped = payload.skipped;
          row.payload_bits = payload_bits(payload);
          row.delivered = link.frame_delivered;
          row.ber = link.report.ber_analytic;
          row.pdr = link.report.pdr;
          row.delay_s = link.report.delay_s;
          row.throughput_bps = link.report.throughput_bps;
          row.energy_j = link.report.energy_j;

          std::optional<ResidualPayload> rx_payload;
          if (link.frame_delivered) rx_payload = deserialize_payload(bytes);
          const ReconstructionOutput out =
              reconstruct_frame(state, rx_payload, cfg.receiver);
          row.refined = out.refined;
          dump_frame(cfg, cfg.method, snr_db, static_cast<int>(seq), t, out.frame);
          const QualityReport q = score_frames(S.original[t], out.frame);
          row.mse = q.mse;
          row.psnr_db = q.psnr_db;
          row.ms_ssim = q.ms_ssim;
          csv << csv_line(row);
          acc.add(row);
          result.rows.push_back(row);
          last_sent = t;
        }
      } else {
        // Raw baselines: traditional sends every frame as a full-resolution
        // raster; hybrid sends frame 1 raw and four feature planes per
        // P-frame.
        Frame recon = Frame(ow, oh, 0.5);
        Frame prev_recon_tx = recon;
        for (int t = 0; t < n; ++t) {
          std::vector<std::uint8_t> bytes;
          if (cfg.method == "traditional" || t == 0) {
            bytes = raw_frame_bytes(S.original[t]);
          } else {
            const BlockField field =
                block_match(S.working[t - 1], S.working[t]);
            bytes = hybrid_frame_bytes(prev_recon_tx, S.original[t], field);
          }
          if (!counted_bytes)
            result.total_payload_bytes += static_cast<std::int64_t>(bytes.size());

          const AllocationResult alloc = allocate_for_frame(
              cfg, snr_linear, static_cast<std::int64_t>(bytes.size()) * 8, 0.0,
              0.0, S.fps, qm);
          const LinkOutcome link =
              send_payload(bytes, ch, alloc.rbs_used, stream_key(t));

          if (link.frame_delivered) {
            if (cfg.method == "traditional" || t == 0)
              recon = frame_from_raw(bytes, ow, oh);
            else
              recon = hybrid_decode(prev_recon_tx, bytes);
          }
          // else: freeze the previous reconstruction.
          prev_recon_tx = recon;
          dump_frame(cfg, cfg.method, snr_db, static_cast<int>(seq), t, recon);

          if (t == 0) continue;  // first frame is transmitted, not scored
          ++global_frame;
          ResultRow row;
          row.method = cfg.method;
          row.snr_db = snr_db;
          row.frame_index = global_frame;
          row.payload_bits = static_cast<std::int64_t>(bytes.size()) * 8;
          row.delivered = link.frame_delivered;
          row.ber = link.report.ber_analytic;
          row.pdr = link.report.pdr;
          row.delay_s = link.report.delay_s;
          row.throughput_bps = link.report.throughput_bps;
          row.energy_j = link.report.energy_j;
          const QualityReport q = score_frames(S.original[t], recon);
          row.mse = q.mse;
          row.psnr_db = q.psnr_db;
          row.ms_ssim = q.ms_ssim;
          csv << csv_line(row);
          acc.add(row);
          result.rows.push_back(row);
        }
      }
      csv.flush();  // completed rows survive a later I/O failure
    }
    counted_bytes = true;
  }

  result.summary = acc.finish();
  if (!csv) throw Error(csv_path + ": write failed");
  return result;
}

std::string format_summary(const ExperimentResult& result) {
  std::ostringstream os;
  os << "method        snr_db     ber        pdr      delay_ms   tput_mbps  "
        "mse        psnr_db   ms_ssim\n";
  for (const auto& p : result.summary) {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%-12s %7.1f  %9.3e  %7.4f  %9.4f  %9.3f  %9.5f  %8.3f  %7.4f\n",
                  p.method.c_str(), p.snr_db, p.mean_ber, p.mean_pdr,
                  p.mean_delay_s * 1e3, p.mean_throughput_bps / 1e6, p.mean_mse,
                  p.mean_psnr_db, p.mean_ms_ssim);
    os << line;
  }
  os << "total payload bytes per corpus pass: " << result.total_payload_bytes
     << "\n";
  return os.str();
}

namespace {

double parse_double(const std::string& v, const std::string& key) {
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw Error("config: bad numeric value for " + key + ": " + v);
  }
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw Error("config: bad boolean for " + key + ": " + v);
}

}  // namespace

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open config");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!line.empty() && is_space(line.front())) line.erase(line.begin());
    while (!line.empty() && is_space(line.back())) line.pop_back();
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    while (!key.empty() && is_space(key.back())) key.pop_back();
    while (!value.empty() && is_space(value.front())) value.erase(value.begin());

    if (key == "method") cfg.method = value;
    else if (key == "seed") {
      try {
        size_t pos = 0;
        cfg.seed = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw Error("config: bad seed value: " + value);
      }
    }
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "dump_dir") cfg.dump_dir = value;
    else if (key == "manifest") cfg.manifests.push_back(value);
    else if (key == "corpus_dir") {
      const auto found = find_manifests(value);
      cfg.manifests.insert(cfg.manifests.end(), found.begin(), found.end());
    } else if (key == "snr") {
      cfg.snr_points_db.clear();
      std::istringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ','))
        cfg.snr_points_db.push_back(parse_double(item, key));
      if (cfg.snr_points_db.empty()) throw Error("config: empty snr list");
    } else if (key == "num_rbs") cfg.channel.num_rbs = static_cast<int>(parse_double(value, key));
    else if (key == "rb_bandwidth_hz") cfg.channel.rb_bandwidth_hz = parse_double(value, key);
    else if (key == "total_power_w") cfg.channel.total_power_w = parse_double(value, key);
    else if (key == "noise_density_w_per_hz") cfg.channel.noise_density_w_per_hz = parse_double(value, key);
    else if (key == "plr") cfg.channel.plr = parse_double(value, key);
    else if (key == "fading") cfg.channel.fading = parse_bool(value, key);
    else if (key == "zeta") cfg.channel.zeta = parse_double(value, key);
    else if (key == "harq_max") cfg.channel.harq_max = static_cast<int>(parse_double(value, key));
    else if (key == "mtu_bytes") cfg.channel.mtu_bytes = static_cast<int>(parse_double(value, key));
    else if (key == "overhead_bytes") cfg.channel.overhead_bytes = static_cast<int>(parse_double(value, key));
    else if (key == "slot_s") cfg.channel.slot_s = parse_double(value, key);
    else if (key == "token_bits") cfg.channel.token_bits = static_cast<int>(parse_double(value, key));
    else if (key == "paper_literal_power") cfg.channel.paper_literal_power = parse_bool(value, key);
    else if (key == "epsilon_gate") cfg.codec.epsilon_gate = parse_double(value, key);
    else if (key == "gop_skip_threshold") cfg.codec.gop_skip_threshold = parse_double(value, key);
    else if (key == "tau_rq") cfg.receiver.tau_rq = parse_double(value, key);
    else if (key == "alpha") cfg.receiver.alpha = parse_double(value, key);
    else if (key == "blend_beta") cfg.receiver.refiner.blend_beta = parse_double(value, key);
    else if (key == "lambda1") cfg.lambda[0] = parse_double(value, key);
    else if (key == "lambda2") cfg.lambda[1] = parse_double(value, key);
    else if (key == "lambda3") cfg.lambda[2] = parse_double(value, key);
    else if (key == "lambda4") cfg.lambda[3] = parse_double(value, key);
    else if (key == "delta") cfg.delta = parse_double(value, key);
    else if (key == "xi_min") cfg.xi_min = parse_double(value, key);
    else throw Error(path + ":" + std::to_string(lineno) + ": unknown key " + key);
  }
}

}  // namespace penme
