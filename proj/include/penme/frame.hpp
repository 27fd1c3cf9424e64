#pragma once

#include <string>
#include <vector>

#include "penme/common.hpp"

namespace penme {

// Grayscale raster with values in [0, 1], row-major.
struct Frame {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  Frame() = default;
  Frame(int w, int h, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<size_t>(w) * h, fill) {}

  double& at(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  double at(int x, int y) const {
    return pixels[static_cast<size_t>(y) * width + x];
  }

  // Reflective lookup, valid for any (x, y).
  double at_reflect(int x, int y) const {
    return at(reflect_index(x, width), reflect_index(y, height));
  }

  bool empty() const { return pixels.empty(); }
  bool same_size(const Frame& o) const {
    return width == o.width && height == o.height;
  }

  // Bilinear sample at fractional coordinates with reflective padding.
  double sample_reflect(double x, double y) const;

  friend bool operator==(const Frame&, const Frame&) = default;
};

struct SequenceManifest {
  std::vector<std::string> frame_paths;
  double fps = 30.0;
  int original_width = 0;
  int original_height = 0;
};

// --- PGM (binary P5, 8-bit) ---
Frame read_pgm(const std::string& path);
void write_pgm(const Frame& f, const std::string& path);

// --- manifest + sequences ---
SequenceManifest read_manifest(const std::string& path);
std::vector<Frame> load_sequence(const std::string& manifest_path);

// --- resampling ---
// Bilinear resize with half-pixel center alignment; output clamped to [0,1].
Frame resize_bilinear(const Frame& f, int target_w, int target_h);

// Downscale to the 128x128 working domain.
Frame to_working_domain(const Frame& f);

// Bilinear upscale of a working-domain frame to the target dimensions.
Frame upscale(const Frame& f, int target_w, int target_h);

}  // namespace penme
