#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wifiholo/analysis.hpp"
#include "wifiholo/hologram.hpp"
#include "wifiholo/imaging.hpp"
#include "wifiholo/scene.hpp"
#include "wifiholo/toml_lite.hpp"
#include "wifiholo/waveform.hpp"

namespace wifiholo {

enum class DecimationMode { Axis, Track };

struct ApertureConfig {
    Point3 origin;
    double span_x = 1.0;
    double span_y = 0.0;
    double dx = 0.05;
    double dy = 0.05;
    std::optional<Point3> reference;
    int decimation = 1;
    DecimationMode decimation_mode = DecimationMode::Axis;

    bool operator==(const ApertureConfig&) const = default;
};

struct ReconstructionConfig {
    Method method = Method::Direct;
    Kernel kernel = Kernel::Phase;
    TaperKind taper = TaperKind::None;
    bool range_compensation = false;
    std::vector<double> z = {0.8};
    std::optional<SliceGrid> grid;
    std::vector<double> bins_hz;  // empty: carrier only
    BinMode bin_mode = BinMode::Single;
    Correlation correlation = Correlation::Conjugate;
    int pad_factor = 2;
    double min_extent_m = 0.0;
    Evanescent evanescent = Evanescent::Zero;
    bool fold_replicas = true;
    bool background = true;

    bool operator==(const ReconstructionConfig&) const = default;
};

struct AnalysisConfig {
    double crest_prominence = 0.2;
    FocusMetric focus_metric = FocusMetric::Peak;
    double epsilon = 1e-3;
    Axis profile_axis = Axis::X;
    // Profile line position on the other axis; default through the slice maximum.
    std::optional<double> profile_at;
    bool intensity = true;  // crest curves on squared magnitude

    bool operator==(const AnalysisConfig&) const = default;
};

struct RunConfig {
    std::uint64_t seed = 1;
    BandLimits band;
    double snr_db = std::numeric_limits<double>::infinity();
    std::optional<double> noise_power;
    MediumAccess medium_access = MediumAccess::TimeShared;
    Scene scene;
    ApertureConfig aperture;
    WaveformSpec waveform;
    WindowSpec window;
    ReconstructionConfig reconstruction;
    AnalysisConfig analysis;
    std::string output_dir = "out";

    bool operator==(const RunConfig&) const = default;
};

enum class ParseMode { Strict, Lenient };

struct ParseOptions {
    ParseMode mode = ParseMode::Strict;
    std::vector<std::string> overrides;
    std::vector<std::string>* warnings = nullptr;
};

RunConfig parse_config(std::string_view text, const ParseOptions& opt = {});
RunConfig config_from_table(const TomlTable& root, const ParseOptions& opt = {});
std::string emit_config(const RunConfig& cfg);

// Only the [scene] section is interpreted.
Scene load_scene(std::string_view text);
std::string emit_scene(const Scene& scene);

void validate_config(const RunConfig& cfg);

ScanAperture full_aperture(const RunConfig& cfg);
AcquisitionSpec acquisition_spec(const RunConfig& cfg);
std::vector<FrequencyBin> hologram_bins(const RunConfig& cfg);
StackOptions stack_options(const RunConfig& cfg, const ScanAperture& aperture, int threads);

}  // namespace wifiholo
