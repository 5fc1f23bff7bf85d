#include "wifiholo/waveform.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "wifiholo/seed.hpp"

namespace wifiholo {

int BarkerSequence::autocorrelation(int lag) const {
    const int n = static_cast<int>(chips.size());
    if (lag < 0) lag = -lag;
    int acc = 0;
    for (int i = 0; i + lag < n; ++i) acc += chips[i] * chips[i + lag];
    return acc;
}

BarkerSequence barker11() { return {{+1, +1, +1, -1, -1, -1, +1, -1, -1, +1, -1}}; }

std::vector<std::uint8_t> payload_bits(std::uint64_t seed, std::size_t n_bits) {
    std::mt19937_64 rng(splitmix64(seed));
    std::vector<std::uint8_t> bits(n_bits);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
    return bits;
}

void validate_waveform(const WaveformSpec& spec) {
    if (!(spec.carrier_hz > 0.0) || !std::isfinite(spec.carrier_hz))
        throw std::invalid_argument("waveform.carrier_hz must be positive");
    if (!(spec.chip_rate_hz > 0.0) || !std::isfinite(spec.chip_rate_hz))
        throw std::invalid_argument("waveform.chip_rate_hz must be positive");
    if (spec.samples_per_chip < 2) throw std::invalid_argument("waveform.samples_per_chip must be >= 2");
    if (spec.n_bits < 1) throw std::invalid_argument("waveform.n_bits must be >= 1");
    if (spec.guard_chips < 0 || spec.guard_chips > 11)
        throw std::invalid_argument("waveform.guard_chips must lie in [0, 11]");
}

void validate_pair(const TimeSeriesPair& pair) {
    if (pair.ref.samples.empty() || pair.sca.samples.empty())
        throw std::invalid_argument("time series pair: empty channel");
    if (pair.ref.samples.size() != pair.sca.samples.size() || pair.ref.sample_rate_hz != pair.sca.sample_rate_hz ||
        pair.ref.t0_s != pair.sca.t0_s || pair.ref.carrier_hz != pair.sca.carrier_hz)
        throw std::invalid_argument("time series pair: channels not synchronized");
    if (!(pair.ref.sample_rate_hz > 0.0)) throw std::invalid_argument("time series pair: sample rate must be > 0");
}

std::vector<int> dbpsk_signs(std::span<const std::uint8_t> bits) {
    std::vector<int> signs(bits.size());
    int phase = 1;
    for (std::size_t b = 0; b < bits.size(); ++b) {
        if (bits[b]) phase = -phase;
        signs[b] = phase;
    }
    return signs;
}

TimeSeries dsss_baseband(std::span<const std::uint8_t> bits, const WaveformSpec& spec) {
    if (bits.empty()) throw std::invalid_argument("dsss_baseband: empty bit sequence");
    validate_waveform(spec);
    const auto barker = barker11();
    const int spc = spec.samples_per_chip;
    const int guard = spec.guard_chips;

    std::vector<double> symbol;
    symbol.reserve(static_cast<std::size_t>(spec.symbol_samples()));
    for (int c = 11 - guard; c < 11; ++c)
        for (int s = 0; s < spc; ++s) symbol.push_back(barker.chips[c]);
    for (int c = 0; c < 11; ++c)
        for (int s = 0; s < spc; ++s) symbol.push_back(barker.chips[c]);

    TimeSeries out;
    out.sample_rate_hz = spec.sample_rate_hz();
    out.t0_s = 0.0;
    out.carrier_hz = spec.carrier_hz;
    out.samples.reserve(bits.size() * symbol.size());
    for (int sign : dbpsk_signs(bits))
        for (double v : symbol) out.samples.emplace_back(sign * v, 0.0);
    return out;
}

}  // namespace wifiholo
