#include "penme/synth.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "penme/rng.hpp"

namespace penme {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Sum of a few low-frequency sinusoids, normalized to roughly [lo, hi].
struct SmoothField {
  struct Wave {
    double fx, fy, phase, amp;
  };
  std::vector<Wave> waves;
  double lo, hi;

  static SmoothField make(Rng& rng, double lo, double hi) {
    SmoothField f;
    f.lo = lo;
    f.hi = hi;
    for (int k = 0; k < 6; ++k) {
      Wave w;
      const double cycles = rng.next_range(1.0, 5.0);
      const double angle = rng.next_range(0.0, 2.0 * kPi);
      w.fx = cycles * std::cos(angle) / kCorpusWidth;
      w.fy = cycles * std::sin(angle) / kCorpusWidth;
      w.phase = rng.next_range(0.0, 2.0 * kPi);
      w.amp = rng.next_range(0.4, 1.0);
      f.waves.push_back(w);
    }
    return f;
  }

  double operator()(double x, double y) const {
    double s = 0.0, norm = 0.0;
    for (const auto& w : waves) {
      s += w.amp * std::sin(2.0 * kPi * (w.fx * x + w.fy * y) + w.phase);
      norm += w.amp;
    }
    const double unit = 0.5 + 0.5 * s / norm;  // [0, 1]
    return lo + (hi - lo) * unit;
  }
};

struct Blob {
  double cx, cy, sigma, amp;
};

Frame render_blobs(const std::vector<Blob>& blobs, double background) {
  Frame f(kCorpusWidth, kCorpusHeight, background);
  for (const auto& b : blobs) {
    const int x0 = std::max(0, static_cast<int>(b.cx - 4 * b.sigma));
    const int x1 = std::min(kCorpusWidth - 1, static_cast<int>(b.cx + 4 * b.sigma));
    const int y0 = std::max(0, static_cast<int>(b.cy - 4 * b.sigma));
    const int y1 = std::min(kCorpusHeight - 1, static_cast<int>(b.cy + 4 * b.sigma));
    const double inv = 1.0 / (2.0 * b.sigma * b.sigma);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const double dx = x - b.cx;
        const double dy = y - b.cy;
        f.at(x, y) = clamp01(f.at(x, y) + b.amp * std::exp(-(dx * dx + dy * dy) * inv));
      }
  }
  return f;
}

}  // namespace

std::vector<Frame> make_translation_clip(std::uint64_t seed) {
  // Dot lattice translating by (14, 4) original px per frame, i.e. exactly
  // (4, 2) in the working domain. Dots are small against the shift so the
  // frame pair decorrelates and motion strength stays high.
  Rng rng = Rng::derive(seed, 0x7261);
  std::vector<Blob> dots;
  const int margin = 64;
  for (int gy = -margin; gy < kCorpusHeight + margin; gy += 16) {
    for (int gx = -margin; gx < kCorpusWidth + margin; gx += 26) {
      Blob b;
      b.cx = gx + rng.next_range(-6.0, 6.0);
      b.cy = gy + rng.next_range(-4.0, 4.0);
      b.sigma = rng.next_range(2.8, 3.8);
      b.amp = rng.next_range(0.55, 0.9);
      dots.push_back(b);
    }
  }
  std::vector<Frame> clip;
  for (int t = 0; t < kCorpusFrames; ++t) {
    std::vector<Blob> moved = dots;
    for (auto& b : moved) {
      b.cx += 14.0 * t;
      b.cy += 4.0 * t;
    }
    clip.push_back(render_blobs(moved, 0.05));
  }
  return clip;
}

std::vector<Frame> make_static_clip(std::uint64_t seed) {
  Rng rng = Rng::derive(seed, 0x7374);
  const SmoothField field = SmoothField::make(rng, 0.15, 0.85);
  Frame f(kCorpusWidth, kCorpusHeight);
  for (int y = 0; y < kCorpusHeight; ++y)
    for (int x = 0; x < kCorpusWidth; ++x) f.at(x, y) = clamp01(field(x, y));
  return std::vector<Frame>(kCorpusFrames, f);
}

std::vector<Frame> make_incoherent_clip(std::uint64_t seed) {
  // Split field: the left half is a near-flat static backdrop while the
  // right half carries bright texture sliding at (14, 4) px per frame, with
  // a sprinkle of teleporting blobs. The phase-correlation peak follows the
  // bright moving texture while the block-vector median stays at zero, so
  // the two global-motion estimates disagree (low consistency, high
  // heterogeneity): the regime routed to the ViT extractor.
  Rng rng = Rng::derive(seed, 0x696e);
  const int split_x = kCorpusWidth / 2;  // 224: block-grid aligned

  std::vector<Blob> dots;
  const int margin = 64;
  for (int gy = -margin; gy < kCorpusHeight + margin; gy += 14) {
    for (int gx = split_x + 20; gx < kCorpusWidth + margin; gx += 22) {
      Blob b;
      b.cx = gx + rng.next_range(-5.0, 5.0);
      b.cy = gy + rng.next_range(-4.0, 4.0);
      b.sigma = rng.next_range(2.6, 3.6);
      b.amp = rng.next_range(0.6, 0.95);
      dots.push_back(b);
    }
  }

  std::vector<Frame> clip;
  for (int t = 0; t < kCorpusFrames; ++t) {
    Frame f(kCorpusWidth, kCorpusHeight, 0.12);
    // Faint static gradient on the left half keeps its blocks textured
    // enough for a strict zero-motion SAD minimum.
    for (int y = 0; y < kCorpusHeight; ++y)
      for (int x = 0; x < split_x; ++x)
        f.at(x, y) = 0.12 + 0.03 * std::sin(0.015 * x) + 0.02 * std::cos(0.02 * y);

    std::vector<Blob> moved;
    for (const auto& d : dots) {
      Blob b = d;
      b.cx += 14.0 * t;
      b.cy += 4.0 * t;
      if (b.cx > split_x + 12.0) moved.push_back(b);
    }
    // Teleporting clutter confined to the moving half.
    for (int k = 0; k < 12; ++k) {
      Blob b;
      b.cx = rng.next_range(split_x + 16.0, kCorpusWidth - 1.0);
      b.cy = rng.next_range(0.0, kCorpusHeight - 1.0);
      b.sigma = rng.next_range(3.0, 6.0);
      b.amp = rng.next_range(0.5, 0.9);
      moved.push_back(b);
    }
    Frame rendered = render_blobs(moved, 0.0);
    for (int y = 0; y < kCorpusHeight; ++y)
      for (int x = split_x; x < kCorpusWidth; ++x)
        f.at(x, y) = clamp01(0.05 + rendered.at(x, y));
    clip.push_back(std::move(f));
  }
  return clip;
}

std::vector<Frame> make_smooth_translation_clip(std::uint64_t seed) {
  Rng rng = Rng::derive(seed, 0x736d);
  const SmoothField field = SmoothField::make(rng, 0.15, 0.85);
  std::vector<Frame> clip;
  for (int t = 0; t < kCorpusFrames; ++t) {
    Frame f(kCorpusWidth, kCorpusHeight);
    // (3.5, 2) original px per frame = (1, 1) in the working domain.
    const double ox = 3.5 * t;
    const double oy = 2.0 * t;
    for (int y = 0; y < kCorpusHeight; ++y)
      for (int x = 0; x < kCorpusWidth; ++x)
        f.at(x, y) = clamp01(field(x - ox, y - oy));
    clip.push_back(std::move(f));
  }
  return clip;
}

std::vector<std::string> synth_corpus(std::uint64_t seed,
                                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> manifests;

  struct Regime {
    const char* name;
    std::vector<Frame> (*make)(std::uint64_t);
  };
  const Regime regimes[] = {{"translation", make_translation_clip},
                            {"static", make_static_clip},
                            {"incoherent", make_incoherent_clip}};

  int seq_index = 0;
  for (const auto& regime : regimes) {
    for (int rep = 0; rep < 3; ++rep, ++seq_index) {
      const std::uint64_t clip_seed = Rng::derive(seed, 77, seq_index).next_u64();
      const std::vector<Frame> clip = regime.make(clip_seed);
      char tag[64];
      std::snprintf(tag, sizeof(tag), "seq%02d_%s", seq_index, regime.name);
      std::vector<std::string> names;
      for (int t = 0; t < kCorpusFrames; ++t) {
        char fname[96];
        std::snprintf(fname, sizeof(fname), "%s_f%d.pgm", tag, t);
        write_pgm(clip[t], (fs::path(out_dir) / fname).string());
        names.emplace_back(fname);
      }
      const std::string manifest_path =
          (fs::path(out_dir) / (std::string(tag) + ".manifest")).string();
      std::ofstream m(manifest_path);
      if (!m) throw Error(manifest_path + ": cannot write manifest");
      m << "fps 30\n";
      m << "size " << kCorpusWidth << " " << kCorpusHeight << "\n";
      for (const auto& n : names) m << n << "\n";
      manifests.push_back(manifest_path);
    }
  }
  return manifests;
}

}  // namespace penme
