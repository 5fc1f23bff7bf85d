#include "wifiholo/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "wifiholo/parallel.hpp"

namespace wifiholo {

void validate_volume(const VolumeSpec& v) {
    if (v.nx < 1 || v.ny < 1 || v.nz < 1) throw std::invalid_argument("volume: counts must be >= 1");
    if (!(v.dx > 0.0) || !(v.dy > 0.0) || !(v.dz > 0.0)) throw std::invalid_argument("volume: spacings must be > 0");
}

bool ImageSlice::same_grid(const ImageSlice& o) const {
    return origin == o.origin && nx == o.nx && ny == o.ny && dx == o.dx && dy == o.dy &&
           values.size() == o.values.size();
}

ImageSlice ImageVolume::slice(int k) const {
    if (k < 0 || k >= spec.nz) throw std::out_of_range("volume: slice index out of range");
    ImageSlice s;
    s.origin = {spec.origin.x, spec.origin.y, slice_z(k)};
    s.nx = spec.nx;
    s.ny = spec.ny;
    s.dx = spec.dx;
    s.dy = spec.dy;
    const std::size_t n = static_cast<std::size_t>(spec.nx) * spec.ny;
    s.values.assign(values.begin() + static_cast<std::ptrdiff_t>(k * n),
                    values.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
    return s;
}

ImageVolume stack_to_volume(const std::vector<ImageSlice>& slices) {
    if (slices.empty()) throw std::invalid_argument("stack_to_volume: empty stack");
    const auto& s0 = slices.front();
    ImageVolume v;
    v.spec.origin = s0.origin;
    v.spec.nx = s0.nx;
    v.spec.ny = s0.ny;
    v.spec.nz = static_cast<int>(slices.size());
    v.spec.dx = s0.dx;
    v.spec.dy = s0.dy;
    v.spec.dz = slices.size() > 1 ? slices[1].z() - s0.z() : 1.0;
    if (!(v.spec.dz > 0.0)) throw std::invalid_argument("stack_to_volume: depths must increase");
    for (std::size_t k = 0; k < slices.size(); ++k) {
        const auto& s = slices[k];
        if (s.nx != s0.nx || s.ny != s0.ny || s.dx != s0.dx || s.dy != s0.dy || s.origin.x != s0.origin.x ||
            s.origin.y != s0.origin.y)
            throw std::invalid_argument("stack_to_volume: slices on different grids");
        if (std::abs(s.z() - (s0.z() + k * v.spec.dz)) > 1e-9 * std::max(1.0, std::abs(s.z())))
            throw std::invalid_argument("stack_to_volume: depths not equally spaced");
        v.z.push_back(s.z());
        v.values.insert(v.values.end(), s.values.begin(), s.values.end());
    }
    return v;
}

std::vector<double> taper_weights(const TaperSpec& t, int nx, int ny) {
    std::vector<double> w(static_cast<std::size_t>(nx) * ny, 1.0);
    if (t.kind == TaperKind::None) return w;
    auto hann = [](int i, int n) { return 0.5 * (1.0 - std::cos(2.0 * kPi * (i + 1) / (n + 1))); };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) w[static_cast<std::size_t>(j) * nx + i] = hann(i, nx) * hann(j, ny);
    return w;
}

SliceGrid SliceGrid::of_aperture(const ScanAperture& a) {
    return {a.origin.x, a.origin.y, a.nx, a.ny, a.dx, a.dy};
}

namespace {

struct Node {
    Point3 position;
    cdouble value;
};

std::vector<Node> weighted_nodes(const Hologram& h, std::size_t b, const TaperSpec& taper) {
    const auto w = taper_weights(taper, h.aperture.nx, h.aperture.ny);
    std::vector<Node> nodes;
    nodes.reserve(h.aperture.size());
    for (const auto& p : s_order_positions(h.aperture)) {
        if (!h.present(p.index.i, p.index.j)) continue;
        nodes.push_back({p.position, w[h.aperture.linear(p.index.i, p.index.j)] * h.at(p.index.i, p.index.j, b)});
    }
    return nodes;
}

void single_bin_slice(const std::vector<Node>& nodes, const FrequencyBin& bin, const SliceGrid& g, double z,
                      const BackprojectOptions& opt, double area, std::vector<double>& out, bool accumulate) {
    const double k = bin.k;
    parallel_for(static_cast<std::size_t>(g.ny), opt.threads, [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        for (int i = 0; i < g.nx; ++i) {
            const Point3 r{g.x0 + i * g.dx, g.y0 + j * g.dy, z};
            cdouble acc{0.0, 0.0};
            for (const auto& n : nodes) {
                const double R = distance(r, n.position);
                if (!(R > 0.0)) throw std::invalid_argument("backproject: voxel coincides with an aperture node");
                const cdouble phase = std::polar(1.0, k * R);
                switch (opt.kernel) {
                    case Kernel::Phase:
                        acc += n.value * (opt.range_compensation ? R * phase : phase);
                        break;
                    case Kernel::RayleighSommerfeld: {
                        const double dz = r.z - n.position.z;
                        const cdouble factor = (dz / (2.0 * kPi * R * R)) * cdouble(1.0 / R, -k) * area;
                        acc += n.value * factor * phase;
                        break;
                    }
                }
            }
            const std::size_t idx = static_cast<std::size_t>(j) * g.nx + i;
            if (accumulate)
                out[idx] += std::abs(acc);
            else
                out[idx] = std::abs(acc);
        }
    });
}

}  // namespace

ImageSlice backproject_slice(const Hologram& h, const SliceGrid& g, double z, const FrequencyBin& bin,
                             const BackprojectOptions& opt) {
    if (!(z > 0.0)) throw std::invalid_argument("backproject: slice must lie in front of the aperture (z > 0)");
    if (g.nx < 1 || g.ny < 1 || !(g.dx > 0.0) || !(g.dy > 0.0)) throw std::invalid_argument("backproject: bad slice grid");
    ImageSlice s;
    s.origin = {g.x0, g.y0, z};
    s.nx = g.nx;
    s.ny = g.ny;
    s.dx = g.dx;
    s.dy = g.dy;
    s.values.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
    const double area = h.aperture.dx * h.aperture.dy;
    if (opt.bin_mode == BinMode::Single) {
        const std::size_t b = h.bin_index(bin.f_hz);
        single_bin_slice(weighted_nodes(h, b, opt.taper), h.bins[b], g, z, opt, area, s.values, false);
    } else {
        for (std::size_t b = 0; b < h.bins.size(); ++b)
            single_bin_slice(weighted_nodes(h, b, opt.taper), h.bins[b], g, z, opt, area, s.values, true);
        for (auto& v : s.values) v /= static_cast<double>(h.bins.size());
    }
    return s;
}

ImageVolume backproject(const Hologram& h, const VolumeSpec& v, const FrequencyBin& bin, const BackprojectOptions& opt) {
    validate_volume(v);
    std::vector<ImageSlice> slices;
    const SliceGrid g{v.origin.x, v.origin.y, v.nx, v.ny, v.dx, v.dy};
    for (int k = 0; k < v.nz; ++k) slices.push_back(backproject_slice(h, g, v.origin.z + k * v.dz, bin, opt));
    ImageVolume out;
    out.spec = v;
    for (auto& s : slices) out.values.insert(out.values.end(), s.values.begin(), s.values.end());
    return out;
}

namespace {

int smooth_size(int n) {
    for (int m = std::max(n, 1);; ++m) {
        int r = m;
        for (int p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

int padded_size(int n, double step, const AngularSpectrumOptions& opt) {
    if (opt.pad_factor < 2) throw std::invalid_argument("angular_spectrum: pad factor must be >= 2");
    const int by_extent = static_cast<int>(std::ceil(opt.min_extent_m / step));
    return smooth_size(std::max(opt.pad_factor * n, by_extent));
}

// Spectrum of one hologram bin on the padded grid, reused across depths.
class AngularPropagator {
public:
    AngularPropagator(const Hologram& h, std::size_t b, const AngularSpectrumOptions& opt)
        : h_(h), bin_(h.bins[b]), opt_(opt) {
        const auto& a = h.aperture;
        n1_ = padded_size(a.nx, a.dx, opt);
        n0_ = padded_size(a.ny, a.dy, opt);
        spectrum_.assign(static_cast<std::size_t>(n0_) * n1_, {0.0, 0.0});
        const auto w = taper_weights(opt.taper, a.nx, a.ny);
        for (int j = 0; j < a.ny; ++j)
            for (int i = 0; i < a.nx; ++i)
                if (h.present(i, j))
                    spectrum_[static_cast<std::size_t>(j) * n1_ + i] = w[a.linear(i, j)] * h.at(i, j, b);
        detail::fft_2d(spectrum_, n0_, n1_, -1);
    }

    ImageSlice slice(double z) const {
        if (!(z >= 0.0)) throw std::invalid_argument("angular_spectrum: z must be >= 0");
        const auto& a = h_.aperture;
        std::vector<cdouble> field = spectrum_;
        if (z > 0.0) {
            const std::vector<double> kx = axis_wavenumbers(n1_, a.dx);
            const std::vector<double> ky = axis_wavenumbers(n0_, a.dy);
            const int px = replica_count(a.dx);
            const int py = replica_count(a.dy);
            const double k2 = bin_.k * bin_.k;
            for (int r = 0; r < n0_; ++r)
                for (int c = 0; c < n1_; ++c) {
                    cdouble t{0.0, 0.0};
                    for (int q = -py; q <= py; ++q) {
                        const double kyq = ky[static_cast<std::size_t>(r)] + 2.0 * kPi * q / a.dy;
                        for (int p = -px; p <= px; ++p) {
                            const double kxp = kx[static_cast<std::size_t>(c)] + 2.0 * kPi * p / a.dx;
                            const double kz2 = k2 - kxp * kxp - kyq * kyq;
                            if (kz2 > 0.0)
                                t += std::polar(1.0, z * std::sqrt(kz2));
                            else if (opt_.evanescent == Evanescent::Decay)
                                t += std::exp(-z * std::sqrt(-kz2));
                        }
                    }
                    field[static_cast<std::size_t>(r) * n1_ + c] *= t;
                }
        }
        detail::fft_2d(field, n0_, n1_, +1);
        const double inv = 1.0 / (static_cast<double>(n0_) * n1_);
        ImageSlice s;
        s.origin = {a.origin.x, a.origin.y, z};
        s.nx = a.nx;
        s.ny = a.ny;
        s.dx = a.dx;
        s.dy = a.dy;
        s.values.resize(a.size());
        for (int j = 0; j < a.ny; ++j)
            for (int i = 0; i < a.nx; ++i)
                s.at(i, j) = std::abs(field[static_cast<std::size_t>(j) * n1_ + i]) * inv;
        return s;
    }

private:
    static std::vector<double> axis_wavenumbers(int n, double step) {
        std::vector<double> k(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) {
            const int mm = (m < (n + 1) / 2) ? m : m - n;
            k[static_cast<std::size_t>(m)] = 2.0 * kPi * mm / (n * step);
        }
        return k;
    }

    int replica_count(double step) const {
        if (!opt_.fold_replicas) return 0;
        return static_cast<int>(std::ceil(bin_.k * step / (2.0 * kPi))) + 1;
    }

    const Hologram& h_;
    FrequencyBin bin_;
    AngularSpectrumOptions opt_;
    int n0_ = 0;
    int n1_ = 0;
    std::vector<cdouble> spectrum_;
};

}  // namespace

ImageSlice angular_spectrum_slice(const Hologram& h, double z, const FrequencyBin& bin, const AngularSpectrumOptions& opt) {
    validate_aperture(h.aperture);
    return AngularPropagator(h, h.bin_index(bin.f_hz), opt).slice(z);
}

namespace {

void normalize_values(const std::vector<double>& bo, const std::vector<double>& bb, double eps, std::vector<double>& out) {
    const double peak = bb.empty() ? 0.0 : *std::max_element(bb.begin(), bb.end());
    const double floor = eps * peak;
    out.resize(bo.size());
    for (std::size_t n = 0; n < bo.size(); ++n) {
        double den = std::max(bb[n], floor);
        if (!(den > 0.0)) den = std::numeric_limits<double>::min();
        out[n] = (bo[n] - bb[n]) / den;
    }
}

}  // namespace

ImageVolume normalize_image(const ImageVolume& bo, const ImageVolume& bb, const EpsilonPolicy& p) {
    if (!(bo.spec == bb.spec) || bo.values.size() != bb.values.size())
        throw std::invalid_argument("normalize_image: volume specs differ");
    ImageVolume out;
    out.spec = bo.spec;
    out.z = bo.z;
    normalize_values(bo.values, bb.values, p.epsilon, out.values);
    return out;
}

ImageSlice normalize_image(const ImageSlice& bo, const ImageSlice& bb, const EpsilonPolicy& p) {
    if (!bo.same_grid(bb)) throw std::invalid_argument("normalize_image: slice grids differ");
    ImageSlice out = bo;
    normalize_values(bo.values, bb.values, p.epsilon, out.values);
    return out;
}

std::vector<ImageSlice> reconstruct_stack(const Hologram& h, const std::vector<double>& z_list, const FrequencyBin& bin,
                                          const StackOptions& opt) {
    std::vector<ImageSlice> out;
    if (z_list.empty()) return out;
    for (double z : z_list)
        if (!std::isfinite(z)) throw std::invalid_argument("reconstruct_stack: non-finite depth");
    if (opt.method == Method::Direct) {
        const SliceGrid g = opt.grid.value_or(SliceGrid::of_aperture(h.aperture));
        for (double z : z_list) out.push_back(backproject_slice(h, g, z, bin, opt.direct));
        return out;
    }
    std::vector<std::size_t> bins;
    if (opt.direct.bin_mode == BinMode::Single) {
        bins.push_back(h.bin_index(bin.f_hz));
    } else {
        for (std::size_t b = 0; b < h.bins.size(); ++b) bins.push_back(b);
    }
    AngularSpectrumOptions as = opt.angular;
    out.resize(z_list.size());
    for (std::size_t bi = 0; bi < bins.size(); ++bi) {
        const AngularPropagator prop(h, bins[bi], as);
        for (std::size_t k = 0; k < z_list.size(); ++k) {
            auto s = prop.slice(z_list[k]);
            if (bi == 0) {
                out[k] = std::move(s);
            } else {
                for (std::size_t n = 0; n < s.values.size(); ++n) out[k].values[n] += s.values[n];
            }
        }
    }
    if (bins.size() > 1)
        for (auto& s : out)
            for (auto& v : s.values) v /= static_cast<double>(bins.size());
    return out;
}

}  // namespace wifiholo
