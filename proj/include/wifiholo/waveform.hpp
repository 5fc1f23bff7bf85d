#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wifiholo/scene.hpp"

namespace wifiholo {

struct BarkerSequence {
    std::array<int, 11> chips{};
    int autocorrelation(int lag) const;
};

BarkerSequence barker11();

std::vector<std::uint8_t> payload_bits(std::uint64_t seed, std::size_t n_bits);

struct WaveformSpec {
    double carrier_hz = kDefaultCarrierHz;
    double chip_rate_hz = 11e6;
    int samples_per_chip = 4;
    int n_bits = 64;
    std::uint64_t seed = 1;
    // Cyclic prefix: the last guard_chips chips of each symbol are repeated in
    // front of it, so channel delays up to the guard keep every aligned window
    // a circular shift of one Barker symbol.
    int guard_chips = 1;

    bool operator==(const WaveformSpec&) const = default;

    double sample_rate_hz() const { return chip_rate_hz * samples_per_chip; }
    int body_samples() const { return 11 * samples_per_chip; }
    int guard_samples() const { return guard_chips * samples_per_chip; }
    int symbol_samples() const { return body_samples() + guard_samples(); }
    double body_duration_s() const { return 11.0 / chip_rate_hz; }
    double guard_duration_s() const { return guard_chips / chip_rate_hz; }
    double symbol_duration_s() const { return (11.0 + guard_chips) / chip_rate_hz; }
};

void validate_waveform(const WaveformSpec& spec);

struct TimeSeries {
    std::vector<cdouble> samples;
    double sample_rate_hz = 44e6;
    double t0_s = 0.0;
    // Frequency the complex envelope is referenced to.
    double carrier_hz = kDefaultCarrierHz;

    bool operator==(const TimeSeries&) const = default;
};

struct TimeSeriesPair {
    TimeSeries ref;
    TimeSeries sca;
    bool operator==(const TimeSeriesPair&) const = default;
};

void validate_pair(const TimeSeriesPair& pair);

// Barker-spread DBPSK envelope, one symbol per bit, unit average power.
TimeSeries dsss_baseband(std::span<const std::uint8_t> bits, const WaveformSpec& spec);

// +/-1 symbol signs after differential encoding (first symbol references +1).
std::vector<int> dbpsk_signs(std::span<const std::uint8_t> bits);

}  // namespace wifiholo
