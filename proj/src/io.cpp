#include "wifiholo/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wifiholo/toml_lite.hpp"

namespace wifiholo {

namespace {

std::string num(double v) { return format_number(v); }

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double parse_double(const std::string& s) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw std::runtime_error("malformed number '" + s + "'");
    return v;
}

long parse_long(const std::string& s) {
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw std::runtime_error("malformed integer '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

fs::path sidecar(const fs::path& p) { return fs::path(p.string() + ".txt"); }

std::map<std::string, std::vector<std::string>> read_key_values(const fs::path& path) {
    std::istringstream in(read_text_file(path));
    std::map<std::string, std::vector<std::string>> kv;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        std::vector<std::string> vals;
        for (std::string v; ls >> v;) vals.push_back(v);
        kv[key] = vals;
    }
    return kv;
}

const std::vector<std::string>& field(const std::map<std::string, std::vector<std::string>>& kv, const std::string& key,
                                      std::size_t n, const fs::path& path) {
    auto it = kv.find(key);
    if (it == kv.end() || it->second.size() < n)
        throw std::runtime_error(path.string() + ": missing or short field '" + key + "'");
    return it->second;
}

}  // namespace

void write_text_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string hologram_to_csv(const Hologram& h) {
    const auto& a = h.aperture;
    std::string out = "# wifiholo-hologram nx=" + std::to_string(a.nx) + " ny=" + std::to_string(a.ny) + " dx=" + num(a.dx) +
                      " dy=" + num(a.dy) + " origin=" + num(a.origin.x) + ";" + num(a.origin.y) + ";" + num(a.origin.z) +
                      " reference=" + num(a.reference.x) + ";" + num(a.reference.y) + ";" + num(a.reference.z) + " bins=";
    for (std::size_t b = 0; b < h.bins.size(); ++b) out += (b ? ";" : "") + num(h.bins[b].f_hz);
    out += "\ni,j,f_hz,re,im\n";
    for (std::size_t b = 0; b < h.bins.size(); ++b)
        for (int j = 0; j < a.ny; ++j)
            for (int i = 0; i < a.nx; ++i) {
                if (!h.present(i, j)) continue;
                const auto v = h.at(i, j, b);
                out += std::to_string(i) + "," + std::to_string(j) + "," + num(h.bins[b].f_hz) + "," + num(v.real()) + "," +
                       num(v.imag()) + "\n";
            }
    return out;
}

Hologram hologram_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header) || header.rfind("# wifiholo-hologram", 0) != 0)
        throw std::runtime_error("hologram csv: missing header line");
    std::map<std::string, std::string> kv;
    {
        std::istringstream hs(header.substr(std::strlen("# wifiholo-hologram")));
        for (std::string tok; hs >> tok;) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::runtime_error("hologram csv: malformed header token '" + tok + "'");
            kv[tok.substr(0, eq)] = tok.substr(eq + 1);
        }
    }
    for (const char* k : {"nx", "ny", "dx", "dy", "origin", "reference", "bins"})
        if (!kv.count(k)) throw std::runtime_error(std::string("hologram csv: header lacks ") + k);
    auto point = [&](const std::string& s) {
        const auto p = split(s, ';');
        if (p.size() != 3) throw std::runtime_error("hologram csv: malformed point '" + s + "'");
        return Point3{parse_double(p[0]), parse_double(p[1]), parse_double(p[2])};
    };
    ScanAperture a;
    a.nx = static_cast<int>(parse_long(kv["nx"]));
    a.ny = static_cast<int>(parse_long(kv["ny"]));
    a.dx = parse_double(kv["dx"]);
    a.dy = parse_double(kv["dy"]);
    a.origin = point(kv["origin"]);
    a.reference = point(kv["reference"]);
    std::vector<FrequencyBin> bins;
    for (const auto& f : split(kv["bins"], ';')) bins.push_back(FrequencyBin::at(parse_double(f)));
    Hologram h = make_hologram(a, bins);
    std::vector<bool> seen(a.size(), false);

    std::string line;
    std::getline(in, line);  // column names
    int line_no = 2;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto f = split(line, ',');
        if (f.size() != 5) throw std::runtime_error("hologram csv: line " + std::to_string(line_no) + " has wrong field count");
        const int i = static_cast<int>(parse_long(f[0]));
        const int j = static_cast<int>(parse_long(f[1]));
        if (i < 0 || j < 0 || i >= a.nx || j >= a.ny)
            throw std::runtime_error("hologram csv: line " + std::to_string(line_no) + " index outside the grid");
        const std::size_t b = h.bin_index(parse_double(f[2]));
        h.at(i, j, b) = {parse_double(f[3]), parse_double(f[4])};
        seen[a.linear(i, j)] = true;
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) h.mask = seen;
    return h;
}

void write_hologram_csv(const Hologram& h, const fs::path& path) { write_text_file(path, hologram_to_csv(h)); }

Hologram read_hologram_csv(const fs::path& path) { return hologram_from_csv(read_text_file(path)); }

void write_slice_pgm(const ImageSlice& s, const fs::path& path) {
    if (s.values.size() != static_cast<std::size_t>(s.nx) * s.ny) throw std::invalid_argument("pgm: slice size mismatch");
    for (double v : s.values)
        if (!std::isfinite(v)) throw std::invalid_argument("pgm: non-finite value");
    const double lo = *std::min_element(s.values.begin(), s.values.end());
    const double hi = *std::max_element(s.values.begin(), s.values.end());
    std::string data = "P5\n" + std::to_string(s.nx) + " " + std::to_string(s.ny) + "\n255\n";
    const std::size_t header = data.size();
    data.resize(header + s.values.size());
    // Top row is the largest y so the image reads with y upward.
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const double v = s.at(i, j);
            const int level = hi > lo ? static_cast<int>(std::lround((v - lo) / (hi - lo) * 255.0)) : 0;
            data[header + static_cast<std::size_t>(s.ny - 1 - j) * s.nx + i] = static_cast<char>(std::clamp(level, 0, 255));
        }
    write_text_file(path, data);
    std::ostringstream side;
    side << "# linear grey mapping: value = min + level / 255 * (max - min)\n";
    side << "min " << num(lo) << "\nmax " << num(hi) << "\nz " << num(s.origin.z) << "\n";
    side << "origin " << num(s.origin.x) << " " << num(s.origin.y) << "\n";
    side << "spacing " << num(s.dx) << " " << num(s.dy) << "\n";
    side << "dims " << s.nx << " " << s.ny << "\n";
    write_text_file(sidecar(path), side.str());
}

ImageSlice read_slice_pgm(const fs::path& path) {
    const std::string data = read_text_file(path);
    std::size_t pos = 0;
    auto token = [&]() {
        while (pos < data.size()) {
            if (std::isspace(static_cast<unsigned char>(data[pos]))) {
                ++pos;
            } else if (data[pos] == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
        const std::size_t start = pos;
        while (pos < data.size() && !std::isspace(static_cast<unsigned char>(data[pos]))) ++pos;
        if (start == pos) throw std::runtime_error("pgm: malformed header in " + path.string());
        return data.substr(start, pos - start);
    };
    if (token() != "P5") throw std::runtime_error("pgm: not a P5 file: " + path.string());
    const long nx = parse_long(token());
    const long ny = parse_long(token());
    const long maxval = parse_long(token());
    if (nx < 1 || ny < 1 || maxval != 255) throw std::runtime_error("pgm: unsupported header in " + path.string());
    ++pos;
    if (data.size() - pos != static_cast<std::size_t>(nx * ny))
        throw std::runtime_error("pgm: pixel data size mismatch in " + path.string());
    const auto kv = read_key_values(sidecar(path));
    const double lo = parse_double(field(kv, "min", 1, path)[0]);
    const double hi = parse_double(field(kv, "max", 1, path)[0]);
    ImageSlice s;
    s.nx = static_cast<int>(nx);
    s.ny = static_cast<int>(ny);
    s.origin = {parse_double(field(kv, "origin", 2, path)[0]), parse_double(field(kv, "origin", 2, path)[1]),
                parse_double(field(kv, "z", 1, path)[0])};
    s.dx = parse_double(field(kv, "spacing", 2, path)[0]);
    s.dy = parse_double(field(kv, "spacing", 2, path)[1]);
    s.values.resize(static_cast<std::size_t>(nx * ny));
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const auto level = static_cast<unsigned char>(data[pos + static_cast<std::size_t>(s.ny - 1 - j) * s.nx + i]);
            s.at(i, j) = lo + level / 255.0 * (hi - lo);
        }
    return s;
}

ImageSlice hologram_magnitude_map(const Hologram& h, std::size_t bin) {
    ImageSlice s;
    s.origin = h.aperture.origin;
    s.nx = h.aperture.nx;
    s.ny = h.aperture.ny;
    s.dx = h.aperture.dx;
    s.dy = h.aperture.dy;
    s.values.resize(h.aperture.size());
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) s.at(i, j) = std::abs(h.at(i, j, bin));
    const double peak = *std::max_element(s.values.begin(), s.values.end());
    if (peak > 0.0)
        for (auto& v : s.values) v /= peak;
    return s;
}

ImageSlice hologram_phase_map(const Hologram& h, std::size_t bin) {
    ImageSlice s = hologram_magnitude_map(h, bin);
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) s.at(i, j) = std::arg(h.at(i, j, bin));
    return s;
}

void write_volume(const ImageVolume& v, const fs::path& path) {
    validate_volume(v.spec);
    if (v.values.size() != v.spec.size()) throw std::invalid_argument("volume: value count does not match spec");
    std::string raw(v.values.size() * 4, '\0');
    for (std::size_t n = 0; n < v.values.size(); ++n) {
        auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v.values[n]));
        for (int b = 0; b < 4; ++b) raw[n * 4 + b] = static_cast<char>((bits >> (8 * b)) & 0xFFu);
    }
    write_text_file(path, raw);
    std::ostringstream m;
    m << "# raw float32 little-endian, x fastest, then y, then z\n";
    m << "dims " << v.spec.nx << " " << v.spec.ny << " " << v.spec.nz << "\n";
    m << "spacing " << num(v.spec.dx) << " " << num(v.spec.dy) << " " << num(v.spec.dz) << "\n";
    m << "origin " << num(v.spec.origin.x) << " " << num(v.spec.origin.y) << " " << num(v.spec.origin.z) << "\n";
    m << "z";
    for (int k = 0; k < v.spec.nz; ++k) m << " " << num(v.slice_z(k));
    m << "\n";
    write_text_file(sidecar(path), m.str());
}

ImageVolume read_volume(const fs::path& path) {
    const auto kv = read_key_values(sidecar(path));
    ImageVolume v;
    const auto& d = field(kv, "dims", 3, path);
    const auto& s = field(kv, "spacing", 3, path);
    const auto& o = field(kv, "origin", 3, path);
    v.spec.nx = static_cast<int>(parse_long(d[0]));
    v.spec.ny = static_cast<int>(parse_long(d[1]));
    v.spec.nz = static_cast<int>(parse_long(d[2]));
    v.spec.dx = parse_double(s[0]);
    v.spec.dy = parse_double(s[1]);
    v.spec.dz = parse_double(s[2]);
    v.spec.origin = {parse_double(o[0]), parse_double(o[1]), parse_double(o[2])};
    validate_volume(v.spec);
    const auto& z = field(kv, "z", static_cast<std::size_t>(v.spec.nz), path);
    for (int k = 0; k < v.spec.nz; ++k) v.z.push_back(parse_double(z[static_cast<std::size_t>(k)]));
    const std::string raw = read_text_file(path);
    if (raw.size() != v.spec.size() * 4)
        throw std::runtime_error("volume: raw size " + std::to_string(raw.size()) + " bytes does not match manifest dims (" +
                                 std::to_string(v.spec.size() * 4) + " bytes expected)");
    v.values.resize(v.spec.size());
    for (std::size_t n = 0; n < v.values.size(); ++n) {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(static_cast<unsigned char>(raw[n * 4 + b])) << (8 * b);
        v.values[n] = std::bit_cast<float>(bits);
    }
    return v;
}

void write_curve_csv(const Curve1D& c, const fs::path& path) {
    std::string out = "coordinate,value\n";
    for (std::size_t k = 0; k < c.values.size(); ++k) out += num(c.coordinates[k]) + "," + num(c.values[k]) + "\n";
    write_text_file(path, out);
}

void write_focus_csv(const FocusReport& r, const fs::path& path) {
    std::string out = "z,metric\n";
    for (std::size_t k = 0; k < r.z.size(); ++k) out += num(r.z[k]) + "," + num(r.metric[k]) + "\n";
    write_text_file(path, out);
}

void write_channel_csv(const std::vector<ChannelRow>& rows, const fs::path& path) {
    std::string out = "position_index,re,im\n";
    for (const auto& r : rows) out += std::to_string(r.position_index) + "," + num(r.value.real()) + "," + num(r.value.imag()) + "\n";
    write_text_file(path, out);
}

void write_metrics_csv(const std::vector<MetricRow>& rows, const fs::path& path) {
    std::string out = "metric,value,criterion,asserted,pass\n";
    for (const auto& r : rows)
        out += r.name + "," + num(r.value) + "," + r.criterion + "," + (r.asserted ? "yes" : "no") + "," +
               (r.asserted ? (r.pass ? "pass" : "FAIL") : "-") + "\n";
    write_text_file(path, out);
}

std::string summary_report(const std::string& title, const std::vector<MetricRow>& rows, const std::vector<std::string>& notes) {
    std::ostringstream o;
    o << title << "\n" << std::string(title.size(), '=') << "\n\n";
    std::size_t width = 6;
    for (const auto& r : rows) width = std::max(width, r.name.size());
    bool all = true;
    for (const auto& r : rows) {
        o << r.name << std::string(width - r.name.size() + 2, ' ') << short_num(r.value);
        if (r.asserted) {
            o << "  [" << (r.pass ? "pass" : "FAIL") << "] " << r.criterion;
            all = all && r.pass;
        } else if (!r.criterion.empty()) {
            o << "  (reported) " << r.criterion;
        }
        o << "\n";
    }
    o << "\noverall: " << (all ? "pass" : "FAIL") << "\n";
    if (!notes.empty()) {
        o << "\nnotes:\n";
        for (const auto& n : notes) o << "- " << n << "\n";
    }
    return o.str();
}

}  // namespace wifiholo
