#pragma once

#include <optional>
#include <vector>

#include "wifiholo/hologram.hpp"
#include "wifiholo/scene.hpp"

namespace wifiholo {

struct VolumeSpec {
    Point3 origin;
    int nx = 1;
    int ny = 1;
    int nz = 1;
    double dx = 0.01;
    double dy = 0.01;
    double dz = 0.1;

    bool operator==(const VolumeSpec&) const = default;
    std::size_t size() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
    }
    Point3 voxel(int i, int j, int k) const {
        return {origin.x + i * dx, origin.y + j * dy, origin.z + k * dz};
    }
};

void validate_volume(const VolumeSpec& v);

struct ImageSlice {
    Point3 origin;  // origin.z is the slice depth
    int nx = 1;
    int ny = 1;
    double dx = 0.01;
    double dy = 0.01;
    std::vector<double> values;  // x fastest

    bool operator==(const ImageSlice&) const = default;
    double z() const { return origin.z; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
    bool same_grid(const ImageSlice& o) const;
};

struct ImageVolume {
    VolumeSpec spec;
    std::vector<double> values;  // x fastest, then y, then z
    std::vector<double> z;       // per-slice depth; empty means origin.z + k * dz

    bool operator==(const ImageVolume&) const = default;
    double& at(int i, int j, int k) { return values[(static_cast<std::size_t>(k) * spec.ny + j) * spec.nx + i]; }
    double at(int i, int j, int k) const {
        return values[(static_cast<std::size_t>(k) * spec.ny + j) * spec.nx + i];
    }
    ImageSlice slice(int k) const;
    double slice_z(int k) const { return z.empty() ? spec.origin.z + k * spec.dz : z[static_cast<std::size_t>(k)]; }
};

// Volume from equally spaced slices sharing one grid.
ImageVolume stack_to_volume(const std::vector<ImageSlice>& slices);

enum class TaperKind { None, Hann };

struct TaperSpec {
    TaperKind kind = TaperKind::None;
    bool operator==(const TaperSpec&) const = default;
};

std::vector<double> taper_weights(const TaperSpec& t, int nx, int ny);

enum class Kernel {
    Phase,               // exp(+jkR)
    RayleighSommerfeld,  // (z / 2 pi R^2)(1/R - jk) exp(+jkR) dx dy
};

enum class BinMode { Single, Incoherent };

struct BackprojectOptions {
    TaperSpec taper;
    Kernel kernel = Kernel::Phase;
    bool range_compensation = false;  // multiply each term by R
    BinMode bin_mode = BinMode::Single;
    int threads = 1;
};

// Voxel grid for a slice; defaults to the aperture node grid.
struct SliceGrid {
    double x0 = 0.0;
    double y0 = 0.0;
    int nx = 1;
    int ny = 1;
    double dx = 0.01;
    double dy = 0.01;

    bool operator==(const SliceGrid&) const = default;
    static SliceGrid of_aperture(const ScanAperture& a);
};

ImageVolume backproject(const Hologram& h, const VolumeSpec& v, const FrequencyBin& bin,
                        const BackprojectOptions& opt = {});

ImageSlice backproject_slice(const Hologram& h, const SliceGrid& g, double z, const FrequencyBin& bin,
                             const BackprojectOptions& opt = {});

enum class Evanescent {
    Zero,   // components with kx^2 + ky^2 > k^2 dropped
    Decay,  // exp(-z kappa), the exact transfer of the backward kernel
};

struct AngularSpectrumOptions {
    int pad_factor = 2;
    double min_extent_m = 0.0;  // padded grid spans at least this length per axis
    Evanescent evanescent = Evanescent::Zero;
    // Fold aliased spectral replicas into the transfer for grids coarser than lambda/2.
    bool fold_replicas = true;
    TaperSpec taper;
};

// Slice on the aperture node grid.
ImageSlice angular_spectrum_slice(const Hologram& h, double z, const FrequencyBin& bin,
                                  const AngularSpectrumOptions& opt = {});

struct EpsilonPolicy {
    double epsilon = 1e-3;
};

ImageVolume normalize_image(const ImageVolume& bo, const ImageVolume& bb, const EpsilonPolicy& p = {});
ImageSlice normalize_image(const ImageSlice& bo, const ImageSlice& bb, const EpsilonPolicy& p = {});

enum class Method { Direct, Angular };

struct StackOptions {
    Method method = Method::Direct;
    BackprojectOptions direct;
    AngularSpectrumOptions angular;
    std::optional<SliceGrid> grid;  // direct method only
};

std::vector<ImageSlice> reconstruct_stack(const Hologram& h, const std::vector<double>& z_list,
                                          const FrequencyBin& bin, const StackOptions& opt = {});

}  // namespace wifiholo
