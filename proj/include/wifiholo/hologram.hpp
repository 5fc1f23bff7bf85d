#pragma once

#include <cstdint>
#include <vector>

#include "wifiholo/forward_model.hpp"
#include "wifiholo/scene.hpp"
#include "wifiholo/waveform.hpp"

namespace wifiholo {

struct WindowSpec {
    double width_s = 1e-6;
    double hop_s = 1e-6;
    double offset_s = 0.0;
    int count = 64;

    bool operator==(const WindowSpec&) const = default;

    // Windows aligned to the Barker body of each symbol of the waveform.
    static WindowSpec aligned_to(const WaveformSpec& spec, int count);
};

struct Spectrum {
    std::vector<double> freq_hz;  // absolute, ascending
    std::vector<cdouble> values;
};

Spectrum windowed_spectrum(const TimeSeries& series, const WindowSpec& w, int window_index);

enum class Correlation { Conjugate, Literal };

cdouble holo_value(const TimeSeriesPair& pair, const WindowSpec& w, const FrequencyBin& bin,
                   Correlation corr = Correlation::Conjugate);

struct Hologram {
    ScanAperture aperture;
    std::vector<FrequencyBin> bins;
    // Index: (b * ny + j) * nx + i.
    std::vector<cdouble> values;
    // Optional node mask indexed by ScanAperture::linear; empty means all present.
    std::vector<bool> mask;

    bool operator==(const Hologram&) const = default;

    std::size_t index(int i, int j, std::size_t b) const {
        return (b * static_cast<std::size_t>(aperture.ny) + j) * aperture.nx + i;
    }
    cdouble& at(int i, int j, std::size_t b) { return values[index(i, j, b)]; }
    const cdouble& at(int i, int j, std::size_t b) const { return values[index(i, j, b)]; }
    bool present(int i, int j) const { return mask.empty() || mask[aperture.linear(i, j)]; }
    // Index of the bin matching f_hz within 1 Hz; throws if absent.
    std::size_t bin_index(double f_hz) const;
};

Hologram make_hologram(const ScanAperture& a, std::vector<FrequencyBin> bins);

struct AcquisitionSpec {
    WaveformSpec waveform;
    WindowSpec window;
    SimulationOptions simulation;
    Correlation correlation = Correlation::Conjugate;
};

Hologram build_hologram(const Scene& scene, const ScanAperture& aperture, const AcquisitionSpec& acq,
                        const std::vector<FrequencyBin>& bins, std::uint64_t seed, int threads = 1);

// Frequency-domain prediction: sum over emitters of power_scale * conj(H(tx,ref)) * H(tx,node).
// Time-shared acquisitions match it exactly when the window count is a multiple
// of the emitter count; simultaneous ones add payload-dependent cross terms.
Hologram analytic_hologram(const Scene& scene, const ScanAperture& aperture,
                           const std::vector<FrequencyBin>& bins);

// Max phase difference at the bin between acquisitions with payload seeds a and b.
double bit_invariance_check(const Scene& scene, const Point3& node, const Point3& reference,
                            const AcquisitionSpec& acq, const FrequencyBin& bin, std::uint64_t seed_a,
                            std::uint64_t seed_b);

Hologram decimate_hologram(const Hologram& h, int d);

// Applies the along-track mask (values kept, absent nodes zeroed).
Hologram track_decimate_hologram(const Hologram& h, int d);

// min over complex alpha of ||a - alpha b|| / ||a||, over present nodes.
double relative_rms_up_to_constant(const Hologram& a, const Hologram& b);

}  // namespace wifiholo
