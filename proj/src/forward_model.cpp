#include "wifiholo/forward_model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fft.hpp"
#include "wifiholo/seed.hpp"

namespace wifiholo {

FrequencyBin FrequencyBin::at(double f_hz) {
    if (!(f_hz > 0.0) || !std::isfinite(f_hz)) throw std::invalid_argument("FrequencyBin: frequency must be positive");
    return {f_hz, 2.0 * kPi * f_hz / kSpeedOfLight, kSpeedOfLight / f_hz};
}

cdouble green(const FrequencyBin& bin, const Point3& a, const Point3& b) {
    const double r = distance(a, b);
    if (!(r > 0.0)) throw std::domain_error("green: coincident points");
    return std::polar(1.0 / (4.0 * kPi * r), -bin.k * r);
}

cdouble wall_transmission(const WallSlab& wall, const FrequencyBin& bin) {
    const double phase = -bin.k * wall.thickness * (std::sqrt(wall.rel_permittivity) - 1.0);
    return std::polar(1.0 - wall.loss_factor, phase);
}

int wall_crossings(const WallSlab& wall, const Point3& a, const Point3& b) {
    const double lo = std::min(a.z, b.z);
    const double hi = std::max(a.z, b.z);
    return (lo <= wall.z_front && hi >= wall.z_front + wall.thickness) ? 1 : 0;
}

namespace {

cdouble wall_factor(const Scene& scene, const FrequencyBin& bin, const Point3& a, const Point3& b) {
    if (!scene.wall || wall_crossings(*scene.wall, a, b) == 0) return {1.0, 0.0};
    return wall_transmission(*scene.wall, bin);
}

double wall_delay(const Scene& scene, const Point3& a, const Point3& b) {
    if (!scene.wall || wall_crossings(*scene.wall, a, b) == 0) return 0.0;
    return scene.wall->thickness * (std::sqrt(scene.wall->rel_permittivity) - 1.0) / kSpeedOfLight;
}

}  // namespace

ChannelResponse channel_response(const Scene& scene, const Point3& tx, const Point3& rx, const FrequencyBin& bin) {
    ChannelResponse out;
    out.direct = wall_factor(scene, bin, tx, rx) * green(bin, tx, rx);
    for (const auto& s : scene.scatterers) {
        out.scattered += s.reflectivity * wall_factor(scene, bin, tx, s.position) * green(bin, tx, s.position) *
                         wall_factor(scene, bin, s.position, rx) * green(bin, s.position, rx);
    }
    return out;
}

std::vector<PropagationPath> propagation_paths(const Scene& scene, const Point3& tx, const Point3& rx,
                                               const FrequencyBin& bin) {
    std::vector<PropagationPath> paths;
    paths.reserve(scene.scatterers.size() + 1);
    paths.push_back({wall_factor(scene, bin, tx, rx) * green(bin, tx, rx),
                     distance(tx, rx) / kSpeedOfLight + wall_delay(scene, tx, rx)});
    for (const auto& s : scene.scatterers) {
        const cdouble g = s.reflectivity * wall_factor(scene, bin, tx, s.position) * green(bin, tx, s.position) *
                          wall_factor(scene, bin, s.position, rx) * green(bin, s.position, rx);
        const double tau = (distance(tx, s.position) + distance(s.position, rx)) / kSpeedOfLight +
                           wall_delay(scene, tx, s.position) + wall_delay(scene, s.position, rx);
        paths.push_back({g, tau});
    }
    return paths;
}

double noise_power_at(const Scene& scene, const Point3& node, const WaveformSpec& spec, const SimulationOptions& opt) {
    if (std::isnan(opt.snr_db) || opt.snr_db == -std::numeric_limits<double>::infinity())
        throw std::invalid_argument("simulate: snr_db must be finite or +inf");
    if (opt.noise_power) {
        if (!(*opt.noise_power >= 0.0) || !std::isfinite(*opt.noise_power))
            throw std::invalid_argument("simulate: noise_power must be finite and >= 0");
        return *opt.noise_power;
    }
    if (std::isinf(opt.snr_db)) return 0.0;
    const auto bin = FrequencyBin::at(spec.carrier_hz);
    double p = 0.0;
    for (const auto& e : scene.emitters) p += e.power_scale * std::norm(channel_response(scene, e.position, node, bin).direct);
    if (opt.access == MediumAccess::TimeShared) p /= static_cast<double>(scene.emitters.size());
    return p / std::pow(10.0, opt.snr_db / 10.0);
}

namespace {

// Envelope-frequency offset of DFT index k for an L-point block, Nyquist taken as negative.
double block_frequency(int k, int L, double fs) {
    const int kk = (k < (L + 1) / 2) ? k : k - L;
    return kk * fs / L;
}

std::vector<cdouble> block_channel(const std::vector<PropagationPath>& paths, int L, double fs, double amplitude) {
    std::vector<cdouble> H(static_cast<std::size_t>(L), {0.0, 0.0});
    for (int k = 0; k < L; ++k) {
        const double f = block_frequency(k, L, fs);
        cdouble acc{0.0, 0.0};
        for (const auto& p : paths) acc += p.gain * std::polar(1.0, -2.0 * kPi * f * p.delay_s);
        H[static_cast<std::size_t>(k)] = amplitude * acc;
    }
    return H;
}

// Circular filtering of one symbol body followed by cyclic-prefix insertion.
void filter_symbol(const std::vector<cdouble>& body_spectrum, const std::vector<cdouble>& H, int guard,
                   std::vector<cdouble>& scratch, cdouble* out) {
    const std::size_t L = H.size();
    scratch.resize(L);
    for (std::size_t k = 0; k < L; ++k) scratch[k] = body_spectrum[k] * H[k];
    detail::fft_1d(scratch, +1);
    const double inv = 1.0 / static_cast<double>(L);
    for (int g = 0; g < guard; ++g) out[g] += scratch[L - guard + g] * inv;
    for (std::size_t n = 0; n < L; ++n) out[guard + n] += scratch[n] * inv;
}

}  // namespace

TimeSeriesPair simulate_rx_pair(const Scene& scene, const Point3& node, const Point3& reference,
                                const WaveformSpec& spec, const SimulationOptions& opt, std::uint64_t seed) {
    validate_waveform(spec);
    validate_scene(scene, {0.0, std::numeric_limits<double>::infinity()});
    const double sigma2 = noise_power_at(scene, node, spec, opt);

    const int L = spec.body_samples();
    const int G = spec.guard_samples();
    const int S = spec.symbol_samples();
    const double fs = spec.sample_rate_hz();
    const auto nb = static_cast<std::size_t>(spec.n_bits);
    const auto bin = FrequencyBin::at(spec.carrier_hz);
    const auto barker = barker11();

    TimeSeriesPair pair;
    for (TimeSeries* ts : {&pair.ref, &pair.sca}) {
        ts->samples.assign(nb * static_cast<std::size_t>(S), {0.0, 0.0});
        ts->sample_rate_hz = fs;
        ts->t0_s = 0.0;
        ts->carrier_hz = spec.carrier_hz;
    }

    const std::size_t E = scene.emitters.size();
    const bool shared = opt.access == MediumAccess::TimeShared && E > 1;
    std::vector<cdouble> body(static_cast<std::size_t>(L));
    std::vector<cdouble> scratch;
    for (std::size_t e = 0; e < E; ++e) {
        const auto& em = scene.emitters[e];
        const auto paths_ref = propagation_paths(scene, em.position, reference, bin);
        const auto paths_sca = propagation_paths(scene, em.position, node, bin);
        for (const auto* paths : {&paths_ref, &paths_sca})
            for (const auto& p : *paths)
                if (p.delay_s > spec.guard_duration_s() * (1.0 + 1e-12))
                    throw std::invalid_argument("simulate: path delay exceeds the cyclic-prefix guard");

        const double amp = std::sqrt(em.power_scale);
        const auto H_ref = block_channel(paths_ref, L, fs, amp);
        const auto H_sca = block_channel(paths_sca, L, fs, amp);
        const auto signs = dbpsk_signs(payload_bits(derive_seed(seed, "payload", e), nb));
        const double df = em.carrier_hz - spec.carrier_hz;

        if (df == 0.0) {
            // Every symbol is +/- the same body, so filter once and scale.
            for (int n = 0; n < L; ++n) body[static_cast<std::size_t>(n)] = barker.chips[n / spec.samples_per_chip];
            detail::fft_1d(body, -1);
            std::vector<cdouble> sym_ref(static_cast<std::size_t>(S)), sym_sca(static_cast<std::size_t>(S));
            filter_symbol(body, H_ref, G, scratch, sym_ref.data());
            filter_symbol(body, H_sca, G, scratch, sym_sca.data());
            for (std::size_t m = 0; m < nb; ++m) {
                if (shared && m % E != e) continue;
                const double s = signs[m];
                cdouble* r = pair.ref.samples.data() + m * static_cast<std::size_t>(S);
                cdouble* q = pair.sca.samples.data() + m * static_cast<std::size_t>(S);
                for (int n = 0; n < S; ++n) {
                    r[n] += s * sym_ref[static_cast<std::size_t>(n)];
                    q[n] += s * sym_sca[static_cast<std::size_t>(n)];
                }
            }
        } else {
            for (std::size_t m = 0; m < nb; ++m) {
                if (shared && m % E != e) continue;
                for (int n = 0; n < L; ++n) {
                    const double t = (static_cast<double>(m) * S + G + n) / fs;
                    body[static_cast<std::size_t>(n)] =
                        static_cast<double>(signs[m] * barker.chips[n / spec.samples_per_chip]) * std::polar(1.0, 2.0 * kPi * df * t);
                }
                detail::fft_1d(body, -1);
                filter_symbol(body, H_ref, G, scratch, pair.ref.samples.data() + m * static_cast<std::size_t>(S));
                filter_symbol(body, H_sca, G, scratch, pair.sca.samples.data() + m * static_cast<std::size_t>(S));
            }
        }
    }

    if (sigma2 > 0.0) {
        std::mt19937_64 rng(derive_seed(seed, "noise"));
        std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2 / 2.0));
        for (TimeSeries* ts : {&pair.ref, &pair.sca})
            for (auto& v : ts->samples) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                v += cdouble(re, im);
            }
    }
    return pair;
}

}  // namespace wifiholo
