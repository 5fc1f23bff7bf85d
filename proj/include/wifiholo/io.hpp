#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wifiholo/analysis.hpp"
#include "wifiholo/hologram.hpp"
#include "wifiholo/imaging.hpp"

namespace wifiholo {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& text);
std::string read_text_file(const fs::path& path);

void write_hologram_csv(const Hologram& h, const fs::path& path);
Hologram read_hologram_csv(const fs::path& path);
std::string hologram_to_csv(const Hologram& h);
Hologram hologram_from_csv(const std::string& text);

// Sidecar written next to the image as <path>.txt.
void write_slice_pgm(const ImageSlice& s, const fs::path& path);
ImageSlice read_slice_pgm(const fs::path& path);

// Grey-level map of a hologram bin: magnitude normalized to peak, or phase in [-pi, pi].
ImageSlice hologram_magnitude_map(const Hologram& h, std::size_t bin);
ImageSlice hologram_phase_map(const Hologram& h, std::size_t bin);

// Raw float32 little-endian plus <path>.txt manifest.
void write_volume(const ImageVolume& v, const fs::path& path);
ImageVolume read_volume(const fs::path& path);

void write_curve_csv(const Curve1D& c, const fs::path& path);
void write_focus_csv(const FocusReport& r, const fs::path& path);

struct ChannelRow {
    std::size_t position_index = 0;
    cdouble value;
};
void write_channel_csv(const std::vector<ChannelRow>& rows, const fs::path& path);

struct MetricRow {
    std::string name;
    double value = 0.0;
    std::string criterion;  // human-readable threshold, empty if reported only
    bool asserted = false;
    bool pass = true;
};

void write_metrics_csv(const std::vector<MetricRow>& rows, const fs::path& path);
std::string summary_report(const std::string& title, const std::vector<MetricRow>& rows,
                           const std::vector<std::string>& notes = {});

}  // namespace wifiholo
