#include "penme/frame.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace penme {

double Frame::sample_reflect(double x, double y) const {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const double ax = x - fx;
  const double ay = y - fy;
  const double v00 = at_reflect(x0, y0);
  const double v10 = at_reflect(x0 + 1, y0);
  const double v01 = at_reflect(x0, y0 + 1);
  const double v11 = at_reflect(x0 + 1, y0 + 1);
  const double top = v00 + ax * (v10 - v00);
  const double bot = v01 + ax * (v11 - v01);
  return top + ay * (bot - top);
}

namespace {

int read_pnm_token(std::istream& in, const std::string& path) {
  // Tokens are separated by whitespace. No comment support: the corpus is
  // machine-written.
  int value = 0;
  if (!(in >> value)) throw Error(path + ": malformed PGM header");
  return value;
}

}  // namespace

Frame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(path + ": cannot open");
  char m0 = 0, m1 = 0;
  in.get(m0);
  in.get(m1);
  if (m0 != 'P' || m1 != '5') throw Error(path + ": not a binary PGM (P5)");
  const int w = read_pnm_token(in, path);
  const int h = read_pnm_token(in, path);
  const int maxval = read_pnm_token(in, path);
  if (w <= 0 || h <= 0) throw Error(path + ": bad dimensions");
  if (maxval != 255) throw Error(path + ": only 8-bit PGM supported");
  in.get();  // single whitespace byte after maxval
  std::vector<unsigned char> raw(static_cast<size_t>(w) * h);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (in.gcount() != static_cast<std::streamsize>(raw.size()))
    throw Error(path + ": truncated pixel data");
  Frame f(w, h);
  for (size_t i = 0; i < raw.size(); ++i) f.pixels[i] = raw[i] / 255.0;
  return f;
}

void write_pgm(const Frame& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << "P5\n" << f.width << " " << f.height << "\n255\n";
  std::vector<unsigned char> raw(f.pixels.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    const double v = clamp01(f.pixels[i]);
    raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size()));
  if (!out) throw Error(path + ": write failed");
}

SequenceManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open manifest");
  SequenceManifest m;
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ": empty manifest");
  {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key >> m.fps) || key != "fps" || m.fps <= 0)
      throw Error(path + ": expected 'fps <real>' on line 1");
  }
  if (!std::getline(in, line)) throw Error(path + ": missing size line");
  {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key >> m.original_width >> m.original_height) || key != "size" ||
        m.original_width <= 0 || m.original_height <= 0)
      throw Error(path + ": expected 'size <w> <h>' on line 2");
  }
  const auto base = std::filesystem::path(path).parent_path();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::filesystem::path p(line);
    if (p.is_relative()) p = base / p;
    m.frame_paths.push_back(p.string());
  }
  if (m.frame_paths.size() < 2) throw Error(path + ": at least 2 frames required");
  return m;
}

std::vector<Frame> load_sequence(const std::string& manifest_path) {
  const SequenceManifest m = read_manifest(manifest_path);
  std::vector<Frame> frames;
  frames.reserve(m.frame_paths.size());
  for (const auto& p : m.frame_paths) {
    Frame f = read_pgm(p);
    if (f.width != m.original_width || f.height != m.original_height)
      throw Error(p + ": frame dimensions do not match manifest");
    frames.push_back(std::move(f));
  }
  return frames;
}

Frame resize_bilinear(const Frame& f, int target_w, int target_h) {
  if (f.empty()) throw Error("resize: empty frame");
  if (target_w <= 0 || target_h <= 0) throw Error("resize: nonpositive target");
  if (f.width == target_w && f.height == target_h) return f;
  Frame out(target_w, target_h);
  const double sx = static_cast<double>(f.width) / target_w;
  const double sy = static_cast<double>(f.height) / target_h;
  for (int y = 0; y < target_h; ++y) {
    // Half-pixel center mapping, clamped to the valid sample range.
    double src_y = (y + 0.5) * sy - 0.5;
    src_y = std::min(std::max(src_y, 0.0), static_cast<double>(f.height - 1));
    const int y0 = static_cast<int>(src_y);
    const int y1 = std::min(y0 + 1, f.height - 1);
    const double ay = src_y - y0;
    for (int x = 0; x < target_w; ++x) {
      double src_x = (x + 0.5) * sx - 0.5;
      src_x = std::min(std::max(src_x, 0.0), static_cast<double>(f.width - 1));
      const int x0 = static_cast<int>(src_x);
      const int x1 = std::min(x0 + 1, f.width - 1);
      const double ax = src_x - x0;
      const double top = f.at(x0, y0) + ax * (f.at(x1, y0) - f.at(x0, y0));
      const double bot = f.at(x0, y1) + ax * (f.at(x1, y1) - f.at(x0, y1));
      out.at(x, y) = clamp01(top + ay * (bot - top));
    }
  }
  return out;
}

Frame to_working_domain(const Frame& f) {
  return resize_bilinear(f, kWorkingSize, kWorkingSize);
}

Frame upscale(const Frame& f, int target_w, int target_h) {
  if (f.width != kWorkingSize || f.height != kWorkingSize)
    throw Error("upscale: input must be a working-domain frame");
  return resize_bilinear(f, target_w, target_h);
}

}  // namespace penme
