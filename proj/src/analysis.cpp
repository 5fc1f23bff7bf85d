#include "wifiholo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wifiholo {

Curve1D Curve1D::normalized() const {
    Curve1D out = *this;
    if (values.empty()) return out;
    const double peak = *std::max_element(values.begin(), values.end());
    if (peak > 0.0)
        for (auto& v : out.values) v /= peak;
    return out;
}

namespace {

void check_curve(const Curve1D& c) {
    if (c.values.empty()) throw std::invalid_argument("curve: empty");
    if (c.values.size() != c.coordinates.size()) throw std::invalid_argument("curve: coordinate/value length mismatch");
}

}  // namespace

std::vector<double> find_crests(const Curve1D& c, double min_prominence) {
    check_curve(c);
    const auto& v = c.values;
    const std::size_t n = v.size();
    const double peak = *std::max_element(v.begin(), v.end());
    std::vector<double> crests;
    if (!(peak > 0.0)) return crests;
    const double threshold = min_prominence * peak;

    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(v[i] > v[i - 1])) {
            ++i;
            continue;
        }
        // Plateaus report their first sample.
        std::size_t end = i;
        while (end + 1 < n && v[end + 1] == v[i]) ++end;
        if (end + 1 >= n || !(v[end + 1] < v[i])) {
            i = end + 1;
            continue;
        }
        double left_min = v[i];
        for (std::size_t l = i; l-- > 0;) {
            if (v[l] > v[i]) break;
            left_min = std::min(left_min, v[l]);
        }
        double right_min = v[i];
        for (std::size_t r = end + 1; r < n; ++r) {
            if (v[r] > v[i]) break;
            right_min = std::min(right_min, v[r]);
        }
        if (v[i] - std::max(left_min, right_min) >= threshold) crests.push_back(c.coordinates[i]);
        i = end + 1;
    }
    std::sort(crests.begin(), crests.end());
    return crests;
}

double slice_metric(const ImageSlice& s, FocusMetric m) {
    if (s.values.empty()) throw std::invalid_argument("focus: empty slice");
    if (m == FocusMetric::Peak) return *std::max_element(s.values.begin(), s.values.end());
    double sum = 0.0, sum2 = 0.0;
    for (double v : s.values) {
        sum += v;
        sum2 += v * v;
    }
    return sum > 0.0 ? sum2 / (sum * sum) : 0.0;
}

FocusReport focus_curve(const std::vector<ImageSlice>& stack, FocusMetric m) {
    if (stack.empty()) throw std::invalid_argument("focus_curve: empty stack");
    std::vector<std::size_t> order(stack.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return stack[a].z() < stack[b].z(); });
    FocusReport r;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k : order) {
        const double value = slice_metric(stack[k], m);
        r.z.push_back(stack[k].z());
        r.metric.push_back(value);
        if (value > best) {
            best = value;
            r.argmax_z = stack[k].z();
        }
    }
    return r;
}

double image_similarity(const ImageSlice& a, const ImageSlice& b) {
    if (a.nx != b.nx || a.ny != b.ny || a.values.size() != b.values.size() || a.values.empty())
        throw std::invalid_argument("image_similarity: slice grids differ");
    const double n = static_cast<double>(a.values.size());
    const double ma = std::accumulate(a.values.begin(), a.values.end(), 0.0) / n;
    const double mb = std::accumulate(b.values.begin(), b.values.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) {
        const double da = a.values[k] - ma;
        const double db = b.values[k] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) throw std::invalid_argument("image_similarity: zero-variance input");
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double fwhm(const Curve1D& c) {
    check_curve(c);
    const auto& v = c.values;
    const auto& x = c.coordinates;
    const std::size_t p = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    if (p == 0 || p + 1 == v.size()) throw std::invalid_argument("fwhm: peak on boundary");
    const double half = v[p] / 2.0;
    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double t = (v[inside] - half) / (v[inside] - v[outside]);
        return x[inside] + t * (x[outside] - x[inside]);
    };
    std::size_t l = p;
    while (l > 0 && v[l - 1] >= half) --l;
    if (l == 0) throw std::invalid_argument("fwhm: no half-maximum crossing on the low side");
    std::size_t r = p;
    while (r + 1 < v.size() && v[r + 1] >= half) ++r;
    if (r + 1 == v.size()) throw std::invalid_argument("fwhm: no half-maximum crossing on the high side");
    return crossing(r, r + 1) - crossing(l, l - 1);
}

Curve1D slice_profile(const ImageSlice& s, Axis axis, double x, double y) {
    Curve1D c;
    if (axis == Axis::X) {
        const int j = std::clamp(static_cast<int>(std::lround((y - s.origin.y) / s.dy)), 0, s.ny - 1);
        for (int i = 0; i < s.nx; ++i) {
            c.coordinates.push_back(s.origin.x + i * s.dx);
            c.values.push_back(s.at(i, j));
        }
    } else {
        const int i = std::clamp(static_cast<int>(std::lround((x - s.origin.x) / s.dx)), 0, s.nx - 1);
        for (int j = 0; j < s.ny; ++j) {
            c.coordinates.push_back(s.origin.y + j * s.dy);
            c.values.push_back(s.at(i, j));
        }
    }
    return c;
}

double psf_fwhm(const Hologram& h, const FrequencyBin& bin, const Point3& target, Axis axis, const PsfOptions& opt) {
    // Locate the response peak near the target, then profile through it.
    const double search = 0.03;
    const int ns = static_cast<int>(std::lround(2.0 * search / opt.step)) + 1;
    const SliceGrid local{target.x - search, target.y - search, ns, h.aperture.ny > 1 ? ns : 1, opt.step, opt.step};
    SliceGrid g = local;
    if (h.aperture.ny == 1) g.y0 = target.y;
    const auto patch = backproject_slice(h, g, target.z, bin, opt.backproject);
    const auto best = static_cast<std::size_t>(std::max_element(patch.values.begin(), patch.values.end()) - patch.values.begin());
    const double px = g.x0 + static_cast<double>(best % static_cast<std::size_t>(g.nx)) * g.dx;
    const double py = g.y0 + static_cast<double>(best / static_cast<std::size_t>(g.nx)) * g.dy;

    const int n = static_cast<int>(std::lround(2.0 * opt.half_extent / opt.step)) + 1;
    SliceGrid line{px, py, 1, 1, opt.step, opt.step};
    if (axis == Axis::X) {
        line.x0 = px - opt.half_extent;
        line.nx = n;
    } else {
        line.y0 = py - opt.half_extent;
        line.ny = n;
    }
    const auto profile = backproject_slice(h, line, target.z, bin, opt.backproject);
    Curve1D c;
    for (int k = 0; k < n; ++k) {
        c.coordinates.push_back((axis == Axis::X ? line.x0 : line.y0) + k * opt.step);
        const double a = profile.values[static_cast<std::size_t>(k)];
        c.values.push_back(a * a);
    }
    return fwhm(c);
}

std::vector<LocalMax> local_maxima(const ImageSlice& s, double min_fraction_of_peak) {
    std::vector<LocalMax> out;
    if (s.values.empty()) return out;
    const double peak = *std::max_element(s.values.begin(), s.values.end());
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const double v = s.at(i, j);
            if (v < min_fraction_of_peak * peak) continue;
            bool is_max = true;
            for (int dj = -1; dj <= 1 && is_max; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= s.nx || jj >= s.ny) continue;
                    if (s.at(ii, jj) > v) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max) out.push_back({i, j, v});
        }
    return out;
}

}  // namespace wifiholo
