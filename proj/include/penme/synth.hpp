#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "penme/frame.hpp"

namespace penme {

inline constexpr int kCorpusWidth = 448;
inline constexpr int kCorpusHeight = 256;
inline constexpr int kCorpusFrames = 3;

// Three-frame clips covering the selector regimes:
//   translation  — sparse bright dots sliding coherently (flow regime)
//   static       — smooth field repeated verbatim (cnn regime)
//   incoherent   — bright blobs redrawn independently per frame (vit regime)
std::vector<Frame> make_translation_clip(std::uint64_t seed);
std::vector<Frame> make_static_clip(std::uint64_t seed);
std::vector<Frame> make_incoherent_clip(std::uint64_t seed);

// Slowly drifting smooth field; near-zero residual after global motion
// compensation. Used for quality-model calibration and round-trip checks.
std::vector<Frame> make_smooth_translation_clip(std::uint64_t seed);

// Writes nine sequences (three per regime) as PGM frames plus one manifest
// per sequence; returns the manifest paths in corpus order.
std::vector<std::string> synth_corpus(std::uint64_t seed,
                                      const std::string& out_dir);

}  // namespace penme
