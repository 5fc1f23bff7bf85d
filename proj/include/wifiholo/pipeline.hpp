#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "wifiholo/analysis.hpp"
#include "wifiholo/config.hpp"
#include "wifiholo/hologram.hpp"
#include "wifiholo/imaging.hpp"
#include "wifiholo/io.hpp"

namespace wifiholo {

// Seed stage names for the object and background acquisitions.
namespace stages {
inline constexpr std::string_view object = "acquisition";
inline constexpr std::string_view background = "acquisition-background";
}  // namespace stages

// Hologram over the full aperture, before decimation.
Hologram simulate_full(const RunConfig& cfg, const Scene& scene, std::string_view stage, int threads);

// Applies the configured decimation.
Hologram apply_decimation(const RunConfig& cfg, const Hologram& full);

Hologram simulate(const RunConfig& cfg, int threads);
Hologram simulate_background(const RunConfig& cfg, int threads);

std::vector<ImageSlice> reconstruct(const RunConfig& cfg, const Hologram& h, int threads);

struct GenericAnalysis {
    FocusReport focus;
    Curve1D profile;  // through the maximum of the best-focus slice
    std::vector<double> crests;
};

GenericAnalysis analyze(const RunConfig& cfg, const std::vector<ImageSlice>& stack);

// Values rounded to float32, as stored in volume files; lets fused runs analyze
// exactly what a staged run reads back.
std::vector<ImageSlice> as_stored(const std::vector<ImageSlice>& stack);
std::vector<ImageSlice> volume_to_stack(const ImageVolume& v);

// File names shared by the staged and fused pipelines.
namespace files {
inline constexpr const char* config = "config.toml";
inline constexpr const char* hologram = "hologram.csv";
inline constexpr const char* hologram_background = "hologram_background.csv";
inline constexpr const char* volume = "volume_object.raw";
inline constexpr const char* volume_background = "volume_background.raw";
inline constexpr const char* volume_normalized = "volume_normalized.raw";
inline constexpr const char* focus = "focus.csv";
inline constexpr const char* profile = "profile.csv";
inline constexpr const char* metrics = "metrics.csv";
inline constexpr const char* summary = "summary.txt";
}  // namespace files

void write_stack(const std::vector<ImageSlice>& stack, const std::filesystem::path& dir,
                 const std::string& stem);
void write_analysis(const GenericAnalysis& a, const std::filesystem::path& dir);

}  // namespace wifiholo
