#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

namespace wifiholo {

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kDefaultCarrierHz = 2.4372e9;
inline constexpr double kPi = 3.14159265358979323846;

using cdouble = std::complex<double>;

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Point3&) const = default;
    Point3 operator+(const Point3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Point3 operator-(const Point3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Point3 operator*(double s) const { return {x * s, y * s, z * s}; }
    bool finite() const;
};

double norm(const Point3& p);
double distance(const Point3& a, const Point3& b);

struct Scatterer {
    Point3 position;
    cdouble reflectivity{1.0, 0.0};
    bool operator==(const Scatterer&) const = default;
};

struct Emitter {
    Point3 position;
    double carrier_hz = kDefaultCarrierHz;
    double power_scale = 1.0;
    bool operator==(const Emitter&) const = default;
};

struct WallSlab {
    double z_front = 0.2;
    double thickness = 0.06;
    double rel_permittivity = 1.0;
    double loss_factor = 0.0;
    bool operator==(const WallSlab&) const = default;
};

struct Scene {
    std::vector<Emitter> emitters;
    std::vector<Scatterer> scatterers;
    std::optional<WallSlab> wall;
    bool operator==(const Scene&) const = default;
};

struct BandLimits {
    double min_hz = 2.4e9;
    double max_hz = 2.5e9;
    bool operator==(const BandLimits&) const = default;
};

// Throws std::invalid_argument naming the offending element.
void validate_scene(const Scene& scene, const BandLimits& band = {});

struct GridIndex {
    int i = 0;
    int j = 0;
    bool operator==(const GridIndex&) const = default;
};

struct ScanAperture {
    Point3 origin;
    int nx = 1;
    int ny = 1;
    double dx = 0.05;
    double dy = 0.05;
    Point3 reference;
    bool s_order = true;

    bool operator==(const ScanAperture&) const = default;
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t linear(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    Point3 node(int i, int j) const { return {origin.x + i * dx, origin.y + j * dy, origin.z}; }
};

void validate_aperture(const ScanAperture& a);

// Reference antenna one wavelength outside the aperture corner along -x.
Point3 default_reference(const Point3& origin, double carrier_hz = kDefaultCarrierHz);

ScanAperture make_aperture(const Point3& origin, double span_x, double span_y, double dx, double dy,
                           const Point3& reference);

struct ScanPosition {
    GridIndex index;
    Point3 position;
};

std::vector<ScanPosition> s_order_positions(const ScanAperture& a);

double nyquist_spacing(double f_hz);

ScanAperture decimate_aperture(const ScanAperture& a, int d);

// Along-track alternative: keeps every d-th position of the S-order walk.
// Returned mask is indexed by ScanAperture::linear.
std::vector<bool> track_decimation_mask(const ScanAperture& a, int d);

}  // namespace wifiholo
