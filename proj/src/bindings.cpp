#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "penme/experiment.hpp"
#include "penme/metrics.hpp"
#include "penme/synth.hpp"

namespace py = pybind11;
using namespace penme;

namespace {

Frame frame_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 2) throw Error("expected a 2D array");
  Frame f(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), f.pixels.begin());
  return f;
}

py::array_t<double> array_from_frame(const Frame& f) {
  py::array_t<double> a({f.height, f.width});
  std::copy(f.pixels.begin(), f.pixels.end(), a.mutable_data());
  return a;
}

py::dict signals_to_dict(const MotionSignals& s) {
  py::dict d;
  d["strength"] = s.strength;
  d["consistency"] = s.consistency;
  d["sharpness"] = s.sharpness;
  d["heterogeneity"] = s.heterogeneity;
  d["residual"] = s.residual;
  d["global_shift"] = py::make_tuple(s.global_shift.x, s.global_shift.y);
  py::array_t<int> field({s.block_field.grid_h, s.block_field.grid_w, 2});
  auto* ptr = field.mutable_data();
  for (const auto& v : s.block_field.vectors) {
    *ptr++ = v.x;
    *ptr++ = v.y;
  }
  d["block_field"] = field;
  return d;
}

}  // namespace

PYBIND11_MODULE(_penme, m) {
  m.doc() = "Semantic video-link simulator core";

  // frame io / resampling
  m.def("read_pgm", [](const std::string& p) { return array_from_frame(read_pgm(p)); });
  m.def("write_pgm", [](const py::array_t<double>& a, const std::string& p) {
    write_pgm(frame_from_array(a), p);
  });
  m.def("to_working_domain",
        [](const py::array_t<double>& a) { return array_from_frame(to_working_domain(frame_from_array(a))); });
  m.def("upscale", [](const py::array_t<double>& a, int w, int h) {
    return array_from_frame(upscale(frame_from_array(a), w, h));
  });

  // motion signals
  m.def("analyze_pair", [](const py::array_t<double>& prev, const py::array_t<double>& next) {
    return signals_to_dict(analyze_pair(frame_from_array(prev), frame_from_array(next)));
  });
  m.def("phase_correlate", [](const py::array_t<double>& a, const py::array_t<double>& b) {
    const CorrelationResult r = phase_correlate(frame_from_array(a), frame_from_array(b));
    py::dict d;
    d["shift"] = py::make_tuple(r.shift.x, r.shift.y);
    d["peak"] = r.peak;
    d["background_mean"] = r.background_mean;
    d["sharpness"] = r.sharpness;
    return d;
  });
  m.def("warp", [](const py::array_t<double>& a, double dx, double dy) {
    return array_from_frame(warp(frame_from_array(a), Vec2d{dx, dy}));
  });

  // selection
  m.def("fuse_and_select", [](const py::array_t<double>& prev, const py::array_t<double>& next) {
    const MotionSignals s = analyze_pair(frame_from_array(prev), frame_from_array(next));
    const ScoreTriple t = fuse_scores(s);
    py::dict d;
    d["scores"] = py::make_tuple(t.cnn, t.flow, t.vit);
    d["modality"] = to_string(select_modality(t));
    return d;
  });

  // codec round trip
  m.def("codec_roundtrip", [](const py::array_t<double>& prev, const py::array_t<double>& next) {
    const Frame p = frame_from_array(prev);
    const Frame n = frame_from_array(next);
    const MotionSignals s = analyze_pair(p, n);
    const Modality f = select_modality(fuse_scores(s));
    CodecConfig cfg;
    const ResidualPayload payload = encode_frame(p, n, s, f, cfg);
    py::dict d;
    d["modality"] = to_string(f);
    d["skipped"] = payload.skipped;
    d["payload_bits"] = payload_bits(payload);
    d["decoded"] = array_from_frame(decode_frame(p, payload));
    return d;
  });

  // link math
  m.def("qfunc", &qfunc);
  m.def("mqam_ber", &mqam_ber);
  m.def("select_modulation", &select_modulation);
  m.def("shannon_capacity", &shannon_capacity);
  m.def("min_power_for_load", &min_power_for_load, py::arg("total_bits"),
        py::arg("bandwidth_hz"), py::arg("time_s"), py::arg("channel_gain"),
        py::arg("noise_density"), py::arg("paper_literal") = false);

  // quality metrics
  m.def("mse", [](const py::array_t<double>& a, const py::array_t<double>& b) {
    return mse(frame_from_array(a), frame_from_array(b));
  });
  m.def("psnr", &psnr);
  m.def("ms_ssim", [](const py::array_t<double>& a, const py::array_t<double>& b) {
    return ms_ssim(frame_from_array(a), frame_from_array(b));
  });

  // allocation
  m.def("allocate",
        [](double lambda1, double lambda2, double lambda3, double lambda4,
           std::int64_t payload_bits_, double semantic_cost, double channel_gain,
           double pred_err) {
          AllocationProblem prob;
          prob.weights = {lambda1, lambda2, lambda3, lambda4};
          prob.payload_bits = payload_bits_;
          prob.semantic_cost = semantic_cost;
          prob.channel_gain = channel_gain;
          prob.prediction_error = pred_err;
          const AllocationResult r = allocate(prob);
          py::dict d;
          d["feasible"] = r.feasible;
          d["rbs_used"] = r.rbs_used;
          d["power_w"] = r.power_w;
          d["rate_bps"] = r.rate_bps;
          d["objective"] = r.objective;
          return d;
        },
        py::arg("lambda1") = 1.0, py::arg("lambda2") = 1.0,
        py::arg("lambda3") = 0.5, py::arg("lambda4") = 2.0,
        py::arg("payload_bits") = 4144, py::arg("semantic_cost") = 0.2,
        py::arg("channel_gain") = 1e-12, py::arg("pred_err") = 0.0);

  // corpus + experiments
  m.def("synth_corpus", &synth_corpus);
  m.def("run_experiment",
        [](const std::string& corpus_dir, const std::string& method,
           const std::vector<double>& snr, std::uint64_t seed,
           const std::string& out_dir) {
          ExperimentConfig cfg;
          cfg.manifests = find_manifests(corpus_dir);
          cfg.method = method;
          if (!snr.empty()) cfg.snr_points_db = snr;
          cfg.seed = seed;
          cfg.output_dir = out_dir;
          const ExperimentResult r = run_experiment(cfg);
          py::dict d;
          d["csv_path"] = r.csv_path;
          d["total_payload_bytes"] = r.total_payload_bytes;
          py::list summary;
          for (const auto& p : r.summary) {
            py::dict sp;
            sp["method"] = p.method;
            sp["snr_db"] = p.snr_db;
            sp["mean_ber"] = p.mean_ber;
            sp["mean_pdr"] = p.mean_pdr;
            sp["mean_delay_s"] = p.mean_delay_s;
            sp["mean_throughput_bps"] = p.mean_throughput_bps;
            sp["mean_mse"] = p.mean_mse;
            sp["mean_psnr_db"] = p.mean_psnr_db;
            sp["mean_ms_ssim"] = p.mean_ms_ssim;
            summary.append(sp);
          }
          d["summary"] = summary;
          return d;
        },
        py::arg("corpus_dir"), py::arg("method") = "penme",
        py::arg("snr") = std::vector<double>{}, py::arg("seed") = 42,
        py::arg("out_dir") = ".");
}
