#include "wifiholo/pipeline.hpp"

#include <algorithm>
#include <cstdio>

#include "wifiholo/seed.hpp"

namespace wifiholo {

Hologram simulate_full(const RunConfig& cfg, const Scene& scene, std::string_view stage, int threads) {
    return build_hologram(scene, full_aperture(cfg), acquisition_spec(cfg), hologram_bins(cfg), derive_seed(cfg.seed, stage),
                          threads);
}

Hologram apply_decimation(const RunConfig& cfg, const Hologram& full) {
    const int d = cfg.aperture.decimation;
    if (d == 1) return full;
    return cfg.aperture.decimation_mode == DecimationMode::Axis ? decimate_hologram(full, d)
                                                                : track_decimate_hologram(full, d);
}

Hologram simulate(const RunConfig& cfg, int threads) { return apply_decimation(cfg, simulate_full(cfg, cfg.scene, stages::object, threads)); }

Hologram simulate_background(const RunConfig& cfg, int threads) {
    Scene bg = cfg.scene;
    bg.scatterers.clear();
    return apply_decimation(cfg, simulate_full(cfg, bg, stages::background, threads));
}

std::vector<ImageSlice> reconstruct(const RunConfig& cfg, const Hologram& h, int threads) {
    return reconstruct_stack(h, cfg.reconstruction.z, hologram_bins(cfg).front(), stack_options(cfg, h.aperture, threads));
}

GenericAnalysis analyze(const RunConfig& cfg, const std::vector<ImageSlice>& stack) {
    GenericAnalysis out;
    out.focus = focus_curve(stack, cfg.analysis.focus_metric);
    const auto it = std::find_if(stack.begin(), stack.end(), [&](const ImageSlice& s) { return s.z() == out.focus.argmax_z; });
    const ImageSlice& best = *it;
    const auto peak = static_cast<std::size_t>(std::max_element(best.values.begin(), best.values.end()) - best.values.begin());
    double x = best.origin.x + static_cast<double>(peak % static_cast<std::size_t>(best.nx)) * best.dx;
    double y = best.origin.y + static_cast<double>(peak / static_cast<std::size_t>(best.nx)) * best.dy;
    if (cfg.analysis.profile_at) (cfg.analysis.profile_axis == Axis::X ? y : x) = *cfg.analysis.profile_at;
    out.profile = slice_profile(best, cfg.analysis.profile_axis, x, y);
    if (cfg.analysis.intensity)
        for (auto& v : out.profile.values) v *= v;
    out.profile = out.profile.normalized();
    out.crests = find_crests(out.profile, cfg.analysis.crest_prominence);
    return out;
}

std::vector<ImageSlice> as_stored(const std::vector<ImageSlice>& stack) {
    std::vector<ImageSlice> out = stack;
    for (auto& s : out)
        for (auto& v : s.values) v = static_cast<float>(v);
    return out;
}

std::vector<ImageSlice> volume_to_stack(const ImageVolume& v) {
    std::vector<ImageSlice> out;
    for (int k = 0; k < v.spec.nz; ++k) out.push_back(v.slice(k));
    return out;
}

void write_stack(const std::vector<ImageSlice>& stack, const std::filesystem::path& dir, const std::string& stem) {
    if (stack.empty()) return;
    write_volume(stack_to_volume(stack), dir / (stem + ".raw"));
    for (const auto& s : stack) {
        char name[64];
        std::snprintf(name, sizeof(name), "_z%.3f.pgm", s.z());
        write_slice_pgm(s, dir / (stem + name));
    }
}

void write_analysis(const GenericAnalysis& a, const std::filesystem::path& dir) {
    write_focus_csv(a.focus, dir / files::focus);
    write_curve_csv(a.profile, dir / files::profile);
}

}  // namespace wifiholo
