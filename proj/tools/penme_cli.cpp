#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "penme/experiment.hpp"
#include "penme/synth.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

bool is_io_error(const std::string& what) {
  return what.find("cannot open") != std::string::npos ||
         what.find("write failed") != std::string::npos ||
         what.find("cannot write") != std::string::npos ||
         what.find("not a directory") != std::string::npos ||
         what.find("truncated") != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"penme: semantic video-link simulator"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "run an SNR sweep over a corpus");
  std::string config_path, method, corpus_dir, out_dir, dump_dir, snr_list;
  std::uint64_t seed = 0;
  bool have_seed = false, paper_literal = false;
  std::vector<std::string> manifests;
  sim->add_option("--config", config_path, "key=value config file");
  sim->add_option("--snr", snr_list, "comma-separated SNR points in dB");
  sim->add_option("--method", method, "penme|traditional|hybrid");
  sim->add_option("--seed", seed, "PRNG seed")->each([&](const std::string&) {
    have_seed = true;
  });
  sim->add_option("--corpus", corpus_dir, "directory of .manifest files");
  sim->add_option("--manifest", manifests, "explicit manifest path(s)");
  sim->add_option("--out", out_dir, "output directory for results.csv");
  sim->add_option("--dump-frames", dump_dir, "dump reconstructed frames here");
  sim->add_flag("--paper-literal-power", paper_literal,
                "use the literal N0/h power formula");

  // synth-corpus
  auto* synth = app.add_subcommand("synth-corpus", "generate the synthetic corpus");
  std::uint64_t synth_seed = 42;
  std::string synth_out = "corpus";
  synth->add_option("--seed", synth_seed, "corpus seed");
  synth->add_option("--out", synth_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      const auto paths = penme::synth_corpus(synth_seed, synth_out);
      for (const auto& p : paths) std::cout << p << "\n";
      return kExitOk;
    }

    penme::ExperimentConfig cfg;
    if (!config_path.empty()) penme::apply_config_file(config_path, cfg);
    if (!method.empty()) cfg.method = method;
    if (have_seed) cfg.seed = seed;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (!dump_dir.empty()) cfg.dump_dir = dump_dir;
    if (paper_literal) cfg.channel.paper_literal_power = true;
    if (!corpus_dir.empty()) cfg.manifests = penme::find_manifests(corpus_dir);
    for (const auto& m : manifests) cfg.manifests.push_back(m);
    if (!snr_list.empty()) {
      cfg.snr_points_db.clear();
      std::string item;
      std::istringstream ss(snr_list);
      while (std::getline(ss, item, ','))
        cfg.snr_points_db.push_back(std::stod(item));
    }
    if (cfg.method != "penme" && cfg.method != "traditional" &&
        cfg.method != "hybrid") {
      std::cerr << "error: unrecognized method '" << cfg.method << "'\n";
      return kExitConfig;
    }
    if (cfg.manifests.empty()) {
      std::cerr << "error: no corpus configured (use --corpus or --manifest)\n";
      return kExitConfig;
    }

    const penme::ExperimentResult result = penme::run_experiment(cfg);
    std::cout << penme::format_summary(result);
    std::cout << "csv: " << result.csv_path << "\n";
    return kExitOk;
  } catch (const penme::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_io_error(e.what()) ? kExitIo : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
