#include "wifiholo/hologram.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "wifiholo/parallel.hpp"
#include "wifiholo/seed.hpp"

namespace wifiholo {

WindowSpec WindowSpec::aligned_to(const WaveformSpec& spec, int count) {
    WindowSpec w;
    w.width_s = spec.body_duration_s();
    w.hop_s = spec.symbol_duration_s();
    w.offset_s = spec.guard_duration_s();
    w.count = count;
    return w;
}

namespace {

int samples_exact(double seconds, double fs, const char* what) {
    const double n = seconds * fs;
    const double r = std::round(n);
    if (std::abs(n - r) > 1e-6) throw std::invalid_argument(std::string("window: ") + what + " is not a whole number of samples");
    return static_cast<int>(r);
}

struct WindowGeometry {
    int length = 0;
    int offset = 0;
    int hop = 0;
};

WindowGeometry geometry(const TimeSeries& series, const WindowSpec& w) {
    if (!(w.width_s > 0.0)) throw std::invalid_argument("window: width must be positive");
    if (!(w.hop_s > 0.0)) throw std::invalid_argument("window: hop must be positive");
    if (!(series.sample_rate_hz > 0.0)) throw std::invalid_argument("window: sample rate must be positive");
    WindowGeometry g;
    g.length = samples_exact(w.width_s, series.sample_rate_hz, "width");
    g.offset = samples_exact(w.offset_s - series.t0_s, series.sample_rate_hz, "offset");
    g.hop = samples_exact(w.hop_s, series.sample_rate_hz, "hop");
    if (g.length < 1) throw std::invalid_argument("window: width shorter than one sample");
    return g;
}

std::size_t window_start(const TimeSeries& series, const WindowGeometry& g, int index) {
    if (index < 0) throw std::out_of_range("window: negative index");
    const long long start = g.offset + static_cast<long long>(index) * g.hop;
    if (start < 0 || start + g.length > static_cast<long long>(series.samples.size()))
        throw std::out_of_range("window " + std::to_string(index) + " exceeds the series");
    return static_cast<std::size_t>(start);
}

// Offset of the bin in units of the window's bin spacing.
int bin_offset(const TimeSeries& series, const WindowSpec& w, const WindowGeometry& g, const FrequencyBin& bin) {
    const double kf = (bin.f_hz - series.carrier_hz) * w.width_s;
    const double k = std::round(kf);
    if (std::abs(kf - k) > 1e-6) throw std::invalid_argument("holo_value: bin is not on the window's frequency grid");
    const int lo = -(g.length / 2);
    const int hi = (g.length + 1) / 2 - 1;
    if (k < lo || k > hi) throw std::invalid_argument("holo_value: bin outside the analyzed band");
    return static_cast<int>(k);
}

}  // namespace

Spectrum windowed_spectrum(const TimeSeries& series, const WindowSpec& w, int window_index) {
    const auto g = geometry(series, w);
    const std::size_t start = window_start(series, g, window_index);
    std::vector<cdouble> seg(series.samples.begin() + static_cast<std::ptrdiff_t>(start),
                             series.samples.begin() + static_cast<std::ptrdiff_t>(start + g.length));
    detail::fft_1d(seg, -1);
    Spectrum out;
    const int L = g.length;
    const int lo = -(L / 2);
    out.freq_hz.reserve(static_cast<std::size_t>(L));
    out.values.reserve(static_cast<std::size_t>(L));
    for (int k = lo; k < lo + L; ++k) {
        out.freq_hz.push_back(series.carrier_hz + k * series.sample_rate_hz / L);
        out.values.push_back(seg[static_cast<std::size_t>((k + L) % L)]);
    }
    return out;
}

cdouble holo_value(const TimeSeriesPair& pair, const WindowSpec& w, const FrequencyBin& bin, Correlation corr) {
    validate_pair(pair);
    if (w.count < 1) throw std::invalid_argument("holo_value: window count must be >= 1");
    const auto g = geometry(pair.ref, w);
    const int k = bin_offset(pair.ref, w, g, bin);
    // Last window must fit; this throws when fewer than w.count windows exist.
    window_start(pair.ref, g, w.count - 1);

    std::vector<cdouble> twiddle(static_cast<std::size_t>(g.length));
    for (int n = 0; n < g.length; ++n)
        twiddle[static_cast<std::size_t>(n)] =
            std::polar(1.0, -2.0 * kPi * static_cast<double>((static_cast<long long>(k) * n) % g.length) / g.length);

    cdouble acc{0.0, 0.0};
    for (int m = 0; m < w.count; ++m) {
        const std::size_t start = window_start(pair.ref, g, m);
        cdouble fr{0.0, 0.0}, fs{0.0, 0.0};
        for (int n = 0; n < g.length; ++n) {
            fr += pair.ref.samples[start + n] * twiddle[static_cast<std::size_t>(n)];
            fs += pair.sca.samples[start + n] * twiddle[static_cast<std::size_t>(n)];
        }
        acc += (corr == Correlation::Conjugate ? std::conj(fr) : fr) * fs;
    }
    return acc / static_cast<double>(w.count);
}

std::size_t Hologram::bin_index(double f_hz) const {
    for (std::size_t b = 0; b < bins.size(); ++b)
        if (std::abs(bins[b].f_hz - f_hz) < 1.0) return b;
    throw std::invalid_argument("hologram: bin " + std::to_string(f_hz) + " Hz not present");
}

Hologram make_hologram(const ScanAperture& a, std::vector<FrequencyBin> bins) {
    validate_aperture(a);
    Hologram h;
    h.aperture = a;
    h.bins = std::move(bins);
    h.values.assign(a.size() * h.bins.size(), {0.0, 0.0});
    return h;
}

Hologram build_hologram(const Scene& scene, const ScanAperture& aperture, const AcquisitionSpec& acq,
                        const std::vector<FrequencyBin>& bins, std::uint64_t seed, int threads) {
    if (bins.empty()) throw std::invalid_argument("build_hologram: no frequency bins");
    Hologram h = make_hologram(aperture, bins);
    const auto order = s_order_positions(aperture);
    parallel_for(order.size(), threads, [&](std::size_t p) {
        const auto& pos = order[p];
        const auto pair =
            simulate_rx_pair(scene, pos.position, aperture.reference, acq.waveform, acq.simulation, derive_seed(seed, "node", p));
        for (std::size_t b = 0; b < bins.size(); ++b)
            h.at(pos.index.i, pos.index.j, b) = holo_value(pair, acq.window, bins[b], acq.correlation);
    });
    return h;
}

Hologram analytic_hologram(const Scene& scene, const ScanAperture& aperture, const std::vector<FrequencyBin>& bins) {
    Hologram h = make_hologram(aperture, bins);
    for (std::size_t b = 0; b < bins.size(); ++b) {
        for (const auto& em : scene.emitters) {
            const cdouble ref = std::conj(channel_response(scene, em.position, aperture.reference, bins[b]).total());
            for (int j = 0; j < aperture.ny; ++j)
                for (int i = 0; i < aperture.nx; ++i)
                    h.at(i, j, b) +=
                        em.power_scale * ref * channel_response(scene, em.position, aperture.node(i, j), bins[b]).total();
        }
    }
    return h;
}

double bit_invariance_check(const Scene& scene, const Point3& node, const Point3& reference, const AcquisitionSpec& acq,
                            const FrequencyBin& bin, std::uint64_t seed_a, std::uint64_t seed_b) {
    const auto a = holo_value(simulate_rx_pair(scene, node, reference, acq.waveform, acq.simulation, seed_a), acq.window,
                              bin, acq.correlation);
    const auto b = holo_value(simulate_rx_pair(scene, node, reference, acq.waveform, acq.simulation, seed_b), acq.window,
                              bin, acq.correlation);
    if (a == b) return 0.0;
    return std::abs(std::arg(b * std::conj(a)));
}

Hologram decimate_hologram(const Hologram& h, int d) {
    Hologram out = make_hologram(decimate_aperture(h.aperture, d), h.bins);
    if (!h.mask.empty()) out.mask.assign(out.aperture.size(), false);
    for (std::size_t b = 0; b < h.bins.size(); ++b)
        for (int j = 0; j < out.aperture.ny; ++j)
            for (int i = 0; i < out.aperture.nx; ++i) {
                out.at(i, j, b) = h.at(i * d, j * d, b);
                if (!h.mask.empty()) out.mask[out.aperture.linear(i, j)] = h.mask[h.aperture.linear(i * d, j * d)];
            }
    return out;
}

Hologram track_decimate_hologram(const Hologram& h, int d) {
    Hologram out = h;
    auto mask = track_decimation_mask(h.aperture, d);
    if (!h.mask.empty())
        for (std::size_t n = 0; n < mask.size(); ++n) mask[n] = mask[n] && h.mask[n];
    for (std::size_t b = 0; b < h.bins.size(); ++b)
        for (int j = 0; j < h.aperture.ny; ++j)
            for (int i = 0; i < h.aperture.nx; ++i)
                if (!mask[h.aperture.linear(i, j)]) out.at(i, j, b) = {0.0, 0.0};
    out.mask = std::move(mask);
    return out;
}

double relative_rms_up_to_constant(const Hologram& a, const Hologram& b) {
    if (a.aperture != b.aperture || a.bins.size() != b.bins.size())
        throw std::invalid_argument("relative_rms: hologram grids differ");
    cdouble ab{0.0, 0.0};
    double bb = 0.0, aa = 0.0;
    for (std::size_t bi = 0; bi < a.bins.size(); ++bi)
        for (int j = 0; j < a.aperture.ny; ++j)
            for (int i = 0; i < a.aperture.nx; ++i) {
                if (!a.present(i, j) || !b.present(i, j)) continue;
                ab += std::conj(b.at(i, j, bi)) * a.at(i, j, bi);
                bb += std::norm(b.at(i, j, bi));
                aa += std::norm(a.at(i, j, bi));
            }
    if (!(aa > 0.0) || !(bb > 0.0)) throw std::invalid_argument("relative_rms: zero hologram");
    const cdouble alpha = ab / bb;
    double rr = 0.0;
    for (std::size_t bi = 0; bi < a.bins.size(); ++bi)
        for (int j = 0; j < a.aperture.ny; ++j)
            for (int i = 0; i < a.aperture.nx; ++i)
                if (a.present(i, j) && b.present(i, j)) rr += std::norm(a.at(i, j, bi) - alpha * b.at(i, j, bi));
    return std::sqrt(rr / aa);
}

}  // namespace wifiholo
