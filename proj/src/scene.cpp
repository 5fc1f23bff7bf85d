#include "wifiholo/scene.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wifiholo {

namespace {

std::string describe(const Point3& p) {
    return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " + std::to_string(p.z) + ")";
}

int grid_count(double span, double step) {
    // Inclusive endpoints; the small tolerance absorbs binary rounding of span/step.
    return static_cast<int>(std::floor(span / step + 1e-9)) + 1;
}

}  // namespace

bool Point3::finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

double norm(const Point3& p) { return std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z); }

double distance(const Point3& a, const Point3& b) { return norm(a - b); }

void validate_scene(const Scene& scene, const BandLimits& band) {
    if (scene.emitters.empty()) throw std::invalid_argument("scene: at least one emitter required");
    for (std::size_t e = 0; e < scene.emitters.size(); ++e) {
        const auto& em = scene.emitters[e];
        const std::string tag = "scene.emitter[" + std::to_string(e) + "]";
        if (!em.position.finite()) throw std::invalid_argument(tag + ": non-finite position");
        if (em.position.z <= 0.0) throw std::invalid_argument(tag + ": position.z must be > 0");
        if (!(em.carrier_hz >= band.min_hz && em.carrier_hz <= band.max_hz))
            throw std::invalid_argument(tag + ": carrier_hz outside the allowed band");
        if (!(em.power_scale >= 0.0) || !std::isfinite(em.power_scale))
            throw std::invalid_argument(tag + ": power_scale must be finite and >= 0");
    }
    for (std::size_t s = 0; s < scene.scatterers.size(); ++s) {
        const auto& sc = scene.scatterers[s];
        const std::string tag = "scene.scatterer[" + std::to_string(s) + "]";
        if (!sc.position.finite()) throw std::invalid_argument(tag + ": non-finite position");
        if (sc.position.z <= 0.0) throw std::invalid_argument(tag + ": position.z must be > 0");
        if (!std::isfinite(std::abs(sc.reflectivity)))
            throw std::invalid_argument(tag + ": reflectivity must be finite");
        for (const auto& em : scene.emitters)
            if (sc.position == em.position)
                throw std::invalid_argument(tag + ": coincides with an emitter at " + describe(em.position));
    }
    if (scene.wall) {
        const auto& w = *scene.wall;
        if (!(w.thickness >= 0.0) || !std::isfinite(w.thickness))
            throw std::invalid_argument("scene.wall: thickness must be >= 0");
        if (!(w.z_front >= 0.0) || !std::isfinite(w.z_front))
            throw std::invalid_argument("scene.wall: z_front must be >= 0");
        if (!(w.rel_permittivity >= 1.0) || !std::isfinite(w.rel_permittivity))
            throw std::invalid_argument("scene.wall: rel_permittivity must be >= 1");
        if (!(w.loss_factor >= 0.0 && w.loss_factor <= 1.0))
            throw std::invalid_argument("scene.wall: loss_factor must lie in [0, 1]");
    }
}

void validate_aperture(const ScanAperture& a) {
    if (a.nx < 1 || a.ny < 1) throw std::invalid_argument("aperture: node counts must be >= 1");
    if (!(a.dx > 0.0) || !(a.dy > 0.0) || !std::isfinite(a.dx) || !std::isfinite(a.dy))
        throw std::invalid_argument("aperture: spacing must be positive");
    if (!a.origin.finite() || !a.reference.finite())
        throw std::invalid_argument("aperture: non-finite origin or reference");
    if (a.reference.z == a.origin.z) {
        const double fi = (a.reference.x - a.origin.x) / a.dx;
        const double fj = (a.reference.y - a.origin.y) / a.dy;
        const double ri = std::round(fi);
        const double rj = std::round(fj);
        if (ri >= 0 && ri < a.nx && rj >= 0 && rj < a.ny &&
            a.node(static_cast<int>(ri), static_cast<int>(rj)) == a.reference)
            throw std::invalid_argument("aperture: reference coincides with grid node " + describe(a.reference));
    }
}

Point3 default_reference(const Point3& origin, double carrier_hz) {
    return {origin.x - kSpeedOfLight / carrier_hz, origin.y, origin.z};
}

ScanAperture make_aperture(const Point3& origin, double span_x, double span_y, double dx, double dy,
                           const Point3& reference) {
    if (!(dx > 0.0) || !(dy > 0.0)) throw std::invalid_argument("make_aperture: spacing must be positive");
    if (!(span_x >= 0.0) || !(span_y >= 0.0)) throw std::invalid_argument("make_aperture: spans must be >= 0");
    ScanAperture a;
    a.origin = origin;
    a.nx = grid_count(span_x, dx);
    a.ny = grid_count(span_y, dy);
    a.dx = dx;
    a.dy = dy;
    a.reference = reference;
    validate_aperture(a);
    return a;
}

std::vector<ScanPosition> s_order_positions(const ScanAperture& a) {
    std::vector<ScanPosition> out;
    out.reserve(a.size());
    for (int j = 0; j < a.ny; ++j) {
        for (int t = 0; t < a.nx; ++t) {
            const int i = (j % 2 == 0) ? t : a.nx - 1 - t;
            out.push_back({{i, j}, a.node(i, j)});
        }
    }
    return out;
}

double nyquist_spacing(double f_hz) {
    if (!(f_hz > 0.0)) throw std::invalid_argument("nyquist_spacing: frequency must be positive");
    return kSpeedOfLight / f_hz / 2.0;
}

ScanAperture decimate_aperture(const ScanAperture& a, int d) {
    if (d < 1) throw std::invalid_argument("decimate_aperture: factor must be >= 1");
    ScanAperture out = a;
    out.nx = (a.nx + d - 1) / d;
    out.ny = (a.ny + d - 1) / d;
    out.dx = a.dx * d;
    out.dy = a.dy * d;
    return out;
}

std::vector<bool> track_decimation_mask(const ScanAperture& a, int d) {
    if (d < 1) throw std::invalid_argument("track_decimation_mask: factor must be >= 1");
    std::vector<bool> mask(a.size(), false);
    const auto order = s_order_positions(a);
    for (std::size_t p = 0; p < order.size(); p += static_cast<std::size_t>(d))
        mask[a.linear(order[p].index.i, order[p].index.j)] = true;
    return mask;
}

}  // namespace wifiholo
