#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "wifiholo/scene.hpp"
#include "wifiholo/waveform.hpp"

namespace wifiholo {

struct FrequencyBin {
    double f_hz = kDefaultCarrierHz;
    double k = 2.0 * kPi * kDefaultCarrierHz / kSpeedOfLight;
    double lambda = kSpeedOfLight / kDefaultCarrierHz;

    static FrequencyBin at(double f_hz);
    bool operator==(const FrequencyBin&) const = default;
};

struct ChannelResponse {
    cdouble direct{0.0, 0.0};
    cdouble scattered{0.0, 0.0};
    cdouble total() const { return direct + scattered; }
};

cdouble green(const FrequencyBin& bin, const Point3& a, const Point3& b);

cdouble wall_transmission(const WallSlab& wall, const FrequencyBin& bin);

// Number of wall faces' slab crossings along the straight segment a-b (0 or 1).
int wall_crossings(const WallSlab& wall, const Point3& a, const Point3& b);

ChannelResponse channel_response(const Scene& scene, const Point3& tx, const Point3& rx,
                                 const FrequencyBin& bin);

// One propagation path: complex gain at the reference bin and group delay.
// Gain at f is gain * exp(-j 2 pi (f - bin.f_hz) delay_s).
struct PropagationPath {
    cdouble gain;
    double delay_s = 0.0;
};

std::vector<PropagationPath> propagation_paths(const Scene& scene, const Point3& tx, const Point3& rx,
                                               const FrequencyBin& bin);

// How emitters sharing the channel use the medium. TimeShared gives symbol
// slot m to emitter m mod E, the way contention-based access keeps co-channel
// routers from overlapping; Simultaneous has every emitter on air in every slot.
enum class MediumAccess { TimeShared, Simultaneous };

struct SimulationOptions {
    double snr_db = std::numeric_limits<double>::infinity();
    MediumAccess access = MediumAccess::TimeShared;
    // Absolute complex noise power per sample; overrides the SNR-derived value.
    std::optional<double> noise_power;
};

// Noise power implied by the options at a scanning-antenna position. The SNR
// refers to the time-averaged received direct-path power.
double noise_power_at(const Scene& scene, const Point3& node, const WaveformSpec& spec,
                      const SimulationOptions& opt);

TimeSeriesPair simulate_rx_pair(const Scene& scene, const Point3& node, const Point3& reference,
                                const WaveformSpec& spec, const SimulationOptions& opt,
                                std::uint64_t seed);

}  // namespace wifiholo
