#include "wifiholo/config.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace wifiholo {

namespace {

struct Context {
    ParseMode mode = ParseMode::Strict;
    std::vector<std::string>* warnings = nullptr;
};

const char* type_name(const TomlValue& v) {
    switch (v.data.index()) {
        case 0: return "boolean";
        case 1: return "integer";
        case 2: return "float";
        case 3: return "string";
        case 4: return "array";
        case 5: return "table";
        default: return "table array";
    }
}

class Section {
public:
    Section(const TomlTable* table, std::string path, Context& ctx) : t_(table), path_(std::move(path)), ctx_(ctx) {}

    bool present() const { return t_ != nullptr; }
    bool has(const std::string& key) const { return t_ && t_->count(key); }
    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const TomlValue* get(const std::string& key) {
        used_.insert(key);
        if (!t_) return nullptr;
        auto it = t_->find(key);
        return it == t_->end() ? nullptr : &it->second;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& msg, int line = 0) const {
        throw ConfigError(key_path(key) + ": " + msg, line, key_path(key));
    }

    double as_number(const std::string& key, const TomlValue& v) const {
        if (auto p = std::get_if<double>(&v.data)) return *p;
        if (auto p = std::get_if<std::int64_t>(&v.data)) return static_cast<double>(*p);
        fail(key, std::string("expected a number, found ") + type_name(v), v.line);
    }

    double number(const std::string& key, double fallback) {
        const TomlValue* v = get(key);
        return v ? as_number(key, *v) : fallback;
    }
    std::optional<double> opt_number(const std::string& key) {
        const TomlValue* v = get(key);
        if (!v) return std::nullopt;
        return as_number(key, *v);
    }
    double required_number(const std::string& key) {
        const TomlValue* v = get(key);
        if (!v) fail(key, "required key missing");
        return as_number(key, *v);
    }
    std::int64_t integer(const std::string& key, std::int64_t fallback) {
        const TomlValue* v = get(key);
        if (!v) return fallback;
        if (auto p = std::get_if<std::int64_t>(&v->data)) return *p;
        fail(key, std::string("expected an integer, found ") + type_name(*v), v->line);
    }
    bool boolean(const std::string& key, bool fallback) {
        const TomlValue* v = get(key);
        if (!v) return fallback;
        if (auto p = std::get_if<bool>(&v->data)) return *p;
        fail(key, std::string("expected a boolean, found ") + type_name(*v), v->line);
    }
    std::string string(const std::string& key, const std::string& fallback) {
        const TomlValue* v = get(key);
        if (!v) return fallback;
        if (auto p = std::get_if<std::string>(&v->data)) return *p;
        fail(key, std::string("expected a string, found ") + type_name(*v), v->line);
    }
    std::vector<double> numbers(const std::string& key, std::size_t expected = 0) {
        const TomlValue* v = get(key);
        if (!v) return {};
        const auto* arr = std::get_if<TomlArray>(&v->data);
        if (!arr) fail(key, std::string("expected an array, found ") + type_name(*v), v->line);
        std::vector<double> out;
        for (const auto& item : *arr) out.push_back(as_number(key, item));
        if (expected && out.size() != expected)
            fail(key, "expected " + std::to_string(expected) + " numbers, found " + std::to_string(out.size()), v->line);
        return out;
    }
    std::optional<Point3> point(const std::string& key) {
        if (!has(key)) {
            used_.insert(key);
            return std::nullopt;
        }
        const auto v = numbers(key, 3);
        return Point3{v[0], v[1], v[2]};
    }
    // Scalar or [a, b] pair.
    std::optional<std::pair<double, double>> pair(const std::string& key) {
        const TomlValue* v = get(key);
        if (!v) return std::nullopt;
        if (std::holds_alternative<TomlArray>(v->data)) {
            const auto n = numbers(key, 2);
            return std::make_pair(n[0], n[1]);
        }
        const double x = as_number(key, *v);
        return std::make_pair(x, x);
    }
    template <class E>
    E choice(const std::string& key, E fallback, std::initializer_list<std::pair<const char*, E>> options) {
        const TomlValue* v = get(key);
        if (!v) return fallback;
        const auto* s = std::get_if<std::string>(&v->data);
        if (!s) fail(key, std::string("expected a string, found ") + type_name(*v), v->line);
        std::string allowed;
        for (const auto& [name, value] : options) {
            if (*s == name) return value;
            allowed += std::string(allowed.empty() ? "" : ", ") + name;
        }
        fail(key, "unknown value '" + *s + "' (allowed: " + allowed + ")", v->line);
    }

    Section child(const std::string& key) {
        const TomlValue* v = get(key);
        if (!v) return Section(nullptr, key_path(key), ctx_);
        if (!v->is_table()) fail(key, "expected a table", v->line);
        return Section(&v->table(), key_path(key), ctx_);
    }
    std::vector<Section> children(const std::string& key) {
        const TomlValue* v = get(key);
        std::vector<Section> out;
        if (!v) return out;
        if (!v->is_table_array()) fail(key, "expected an array of tables ([[" + key_path(key) + "]])", v->line);
        const auto& arr = v->table_array();
        for (std::size_t n = 0; n < arr.size(); ++n)
            out.emplace_back(&arr[n], key_path(key) + "[" + std::to_string(n) + "]", ctx_);
        return out;
    }

    void finish() const {
        if (!t_) return;
        for (const auto& [key, value] : *t_)
            if (!used_.count(key)) report_unknown(key, value);
    }

    void reject_unknown(std::initializer_list<const char*> known) const {
        if (!t_) return;
        for (const auto& [key, value] : *t_) {
            bool ok = false;
            for (const char* k : known) ok = ok || key == k;
            if (!ok) report_unknown(key, value);
        }
    }

    void report_unknown(const std::string& key, const TomlValue& value) const {
        // Name the first leaf under an unknown table so typos read naturally.
        std::string path = key_path(key);
        const TomlValue* v = &value;
        while (v->is_table() && !v->table().empty()) {
            path += "." + v->table().begin()->first;
            v = &v->table().begin()->second;
        }
        const std::string msg = "unknown key '" + path + "'";
        if (ctx_.mode == ParseMode::Strict) throw ConfigError(msg, v->line, path);
        if (ctx_.warnings) ctx_.warnings->push_back(msg);
    }

private:
    const TomlTable* t_;
    std::string path_;
    Context& ctx_;
    std::set<std::string> used_;
};

cdouble read_reflectivity(Section& s) {
    if (!s.has("reflectivity")) {
        s.get("reflectivity");
        return {1.0, 0.0};
    }
    const TomlValue* v = s.get("reflectivity");
    if (std::holds_alternative<TomlArray>(v->data)) {
        const auto n = s.numbers("reflectivity", 2);
        return {n[0], n[1]};
    }
    return {s.as_number("reflectivity", *v), 0.0};
}

Scene read_scene(Section& sec, BandLimits& band) {
    if (!sec.present()) throw ConfigError("missing [scene] section", 0, "scene");
    Scene scene;
    if (auto b = sec.pair("band_hz")) band = {b->first, b->second};
    for (auto& e : sec.children("emitter")) {
        Emitter em;
        auto p = e.point("position");
        if (!p) e.fail("position", "required key missing");
        em.position = *p;
        em.carrier_hz = e.number("carrier_hz", kDefaultCarrierHz);
        em.power_scale = e.number("power_scale", 1.0);
        e.finish();
        scene.emitters.push_back(em);
    }
    for (auto& s : sec.children("scatterer")) {
        Scatterer sc;
        auto p = s.point("position");
        if (!p) s.fail("position", "required key missing");
        sc.position = *p;
        sc.reflectivity = read_reflectivity(s);
        s.finish();
        scene.scatterers.push_back(sc);
    }
    Section w = sec.child("wall");
    if (w.present()) {
        WallSlab wall;
        wall.z_front = w.number("z_front", wall.z_front);
        wall.thickness = w.number("thickness", wall.thickness);
        wall.rel_permittivity = w.number("rel_permittivity", wall.rel_permittivity);
        wall.loss_factor = w.number("loss_factor", wall.loss_factor);
        w.finish();
        scene.wall = wall;
    }
    sec.finish();
    try {
        validate_scene(scene, band);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what(), 0, "scene");
    }
    return scene;
}

}  // namespace

RunConfig config_from_table(const TomlTable& root_table, const ParseOptions& opt) {
    Context ctx{opt.mode, opt.warnings};
    Section root(&root_table, "", ctx);
    if (ctx.mode == ParseMode::Strict)
        root.reject_unknown({"seed", "snr_db", "noise_power", "medium_access", "output_dir", "scene", "aperture", "waveform", "window",
                             "reconstruction", "analysis"});
    RunConfig cfg;

    cfg.seed = static_cast<std::uint64_t>(root.integer("seed", 1));
    cfg.snr_db = root.number("snr_db", cfg.snr_db);
    cfg.noise_power = root.opt_number("noise_power");
    cfg.medium_access = root.choice("medium_access", cfg.medium_access,
                                    {{"time_shared", MediumAccess::TimeShared}, {"simultaneous", MediumAccess::Simultaneous}});
    cfg.output_dir = root.string("output_dir", cfg.output_dir);

    Section scene = root.child("scene");
    cfg.scene = read_scene(scene, cfg.band);

    Section ap = root.child("aperture");
    if (!ap.present()) throw ConfigError("missing [aperture] section", 0, "aperture");
    cfg.aperture.origin = ap.point("origin").value_or(Point3{});
    auto span = ap.pair("span");
    if (!span) ap.fail("span", "required key missing");
    cfg.aperture.span_x = span->first;
    cfg.aperture.span_y = span->second;
    auto spacing = ap.pair("spacing");
    if (!spacing) ap.fail("spacing", "required key missing");
    cfg.aperture.dx = spacing->first;
    cfg.aperture.dy = spacing->second;
    cfg.aperture.reference = ap.point("reference");
    cfg.aperture.decimation = static_cast<int>(ap.integer("decimation", 1));
    cfg.aperture.decimation_mode =
        ap.choice("decimation_mode", DecimationMode::Axis, {{"axis", DecimationMode::Axis}, {"track", DecimationMode::Track}});
    ap.finish();

    Section wf = root.child("waveform");
    cfg.waveform.carrier_hz = wf.number("carrier_hz", cfg.waveform.carrier_hz);
    cfg.waveform.chip_rate_hz = wf.number("chip_rate_hz", cfg.waveform.chip_rate_hz);
    cfg.waveform.samples_per_chip = static_cast<int>(wf.integer("samples_per_chip", cfg.waveform.samples_per_chip));
    cfg.waveform.guard_chips = static_cast<int>(wf.integer("guard_chips", cfg.waveform.guard_chips));
    const auto n_bits = wf.opt_number("n_bits");
    wf.finish();

    Section win = root.child("window");
    const WindowSpec aligned = WindowSpec::aligned_to(cfg.waveform, 64);
    cfg.window.count = static_cast<int>(win.integer("count", aligned.count));
    cfg.window.width_s = win.number("width_s", aligned.width_s);
    cfg.window.hop_s = win.number("hop_s", aligned.hop_s);
    cfg.window.offset_s = win.number("offset_s", aligned.offset_s);
    win.finish();
    cfg.waveform.n_bits = n_bits ? static_cast<int>(*n_bits) : cfg.window.count;
    cfg.waveform.seed = cfg.seed;

    Section rc = root.child("reconstruction");
    auto& r = cfg.reconstruction;
    r.method = rc.choice("method", r.method, {{"direct", Method::Direct}, {"angular", Method::Angular}});
    r.kernel = rc.choice("kernel", r.kernel,
                         {{"phase", Kernel::Phase}, {"rayleigh-sommerfeld", Kernel::RayleighSommerfeld}});
    r.taper = rc.choice("taper", r.taper, {{"none", TaperKind::None}, {"hann", TaperKind::Hann}});
    r.range_compensation = rc.boolean("range_compensation", r.range_compensation);
    if (rc.has("z")) {
        r.z = rc.numbers("z");
    } else if (rc.has("z_range")) {
        const auto zr = rc.numbers("z_range", 3);
        if (!(zr[2] > 0.0)) rc.fail("z_range", "step must be positive");
        r.z.clear();
        const int n = static_cast<int>(std::floor((zr[1] - zr[0]) / zr[2] + 1e-9)) + 1;
        for (int k = 0; k < n; ++k) r.z.push_back(zr[0] + k * zr[2]);
    } else {
        rc.get("z");
    }
    rc.get("z_range");
    if (rc.has("grid_origin") || rc.has("grid_size") || rc.has("grid_step")) {
        const auto o = rc.numbers("grid_origin", 2);
        const auto n = rc.numbers("grid_size", 2);
        const auto s = rc.numbers("grid_step", 2);
        if (o.empty() || n.empty() || s.empty())
            rc.fail("grid_origin", "grid_origin, grid_size and grid_step must be given together");
        r.grid = SliceGrid{o[0], o[1], static_cast<int>(n[0]), static_cast<int>(n[1]), s[0], s[1]};
    } else {
        rc.get("grid_origin");
        rc.get("grid_size");
        rc.get("grid_step");
    }
    r.bins_hz = rc.numbers("bins_hz");
    r.bin_mode = rc.choice("bin_mode", r.bin_mode, {{"single", BinMode::Single}, {"incoherent", BinMode::Incoherent}});
    r.correlation =
        rc.choice("correlation", r.correlation, {{"conjugate", Correlation::Conjugate}, {"literal", Correlation::Literal}});
    r.pad_factor = static_cast<int>(rc.integer("pad_factor", r.pad_factor));
    r.min_extent_m = rc.number("min_extent_m", r.min_extent_m);
    r.evanescent = rc.choice("evanescent", r.evanescent, {{"zero", Evanescent::Zero}, {"decay", Evanescent::Decay}});
    r.fold_replicas = rc.boolean("fold_replicas", r.fold_replicas);
    r.background = rc.boolean("background", r.background);
    rc.finish();

    Section an = root.child("analysis");
    auto& a = cfg.analysis;
    a.crest_prominence = an.number("crest_prominence", a.crest_prominence);
    a.focus_metric =
        an.choice("focus_metric", a.focus_metric, {{"peak", FocusMetric::Peak}, {"sharpness", FocusMetric::Sharpness}});
    a.epsilon = an.number("epsilon", a.epsilon);
    a.profile_axis = an.choice("profile_axis", a.profile_axis, {{"x", Axis::X}, {"y", Axis::Y}});
    a.profile_at = an.opt_number("profile_at");
    a.intensity = an.boolean("intensity", a.intensity);
    an.finish();

    root.finish();
    validate_config(cfg);
    return cfg;
}

RunConfig parse_config(std::string_view text, const ParseOptions& opt) {
    TomlTable root = parse_toml(text);
    for (const auto& o : opt.overrides) apply_override(root, o);
    return config_from_table(root, opt);
}

void validate_config(const RunConfig& cfg) {
    auto wrap = [](const std::string& key, auto&& fn) {
        try {
            fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(key + ": " + e.what(), 0, key);
        }
    };
    wrap("scene", [&] { validate_scene(cfg.scene, cfg.band); });
    wrap("aperture", [&] {
        full_aperture(cfg);
        if (cfg.aperture.decimation < 1) throw std::invalid_argument("decimation must be >= 1");
    });
    wrap("waveform", [&] { validate_waveform(cfg.waveform); });
    wrap("window", [&] {
        const auto& w = cfg.window;
        if (w.count < 1) throw std::invalid_argument("count must be >= 1");
        if (!(w.width_s > 0.0) || !(w.hop_s > 0.0) || !(w.offset_s >= 0.0))
            throw std::invalid_argument("width_s and hop_s must be > 0, offset_s >= 0");
        const double needed = w.offset_s + (w.count - 1) * w.hop_s + w.width_s;
        const double available = cfg.waveform.n_bits * cfg.waveform.symbol_duration_s();
        if (needed > available * (1.0 + 1e-12))
            throw std::invalid_argument("windows extend past the end of the waveform (increase waveform.n_bits)");
    });
    if (std::isnan(cfg.snr_db) || cfg.snr_db == -std::numeric_limits<double>::infinity())
        throw ConfigError("snr_db: must be finite or inf", 0, "snr_db");
    if (cfg.noise_power && !(*cfg.noise_power >= 0.0)) throw ConfigError("noise_power: must be >= 0", 0, "noise_power");
    const auto& r = cfg.reconstruction;
    for (double z : r.z)
        if (!(z > 0.0) && !(r.method == Method::Angular && z == 0.0))
            throw ConfigError("reconstruction.z: depths must be > 0", 0, "reconstruction.z");
    for (double f : r.bins_hz)
        if (!(f > 0.0)) throw ConfigError("reconstruction.bins_hz: frequencies must be > 0", 0, "reconstruction.bins_hz");
    if (r.pad_factor < 2) throw ConfigError("reconstruction.pad_factor: must be >= 2", 0, "reconstruction.pad_factor");
    if (r.grid && (r.grid->nx < 1 || r.grid->ny < 1 || !(r.grid->dx > 0.0) || !(r.grid->dy > 0.0)))
        throw ConfigError("reconstruction.grid_*: invalid slice grid", 0, "reconstruction.grid_size");
    if (!(cfg.analysis.epsilon > 0.0)) throw ConfigError("analysis.epsilon: must be > 0", 0, "analysis.epsilon");
}

ScanAperture full_aperture(const RunConfig& cfg) {
    const auto& a = cfg.aperture;
    const Point3 ref = a.reference.value_or(default_reference(a.origin, cfg.waveform.carrier_hz));
    return make_aperture(a.origin, a.span_x, a.span_y, a.dx, a.dy, ref);
}

AcquisitionSpec acquisition_spec(const RunConfig& cfg) {
    AcquisitionSpec acq;
    acq.waveform = cfg.waveform;
    acq.window = cfg.window;
    acq.simulation.snr_db = cfg.snr_db;
    acq.simulation.noise_power = cfg.noise_power;
    acq.simulation.access = cfg.medium_access;
    acq.correlation = cfg.reconstruction.correlation;
    return acq;
}

std::vector<FrequencyBin> hologram_bins(const RunConfig& cfg) {
    std::vector<FrequencyBin> bins;
    if (cfg.reconstruction.bins_hz.empty()) {
        bins.push_back(FrequencyBin::at(cfg.waveform.carrier_hz));
    } else {
        for (double f : cfg.reconstruction.bins_hz) bins.push_back(FrequencyBin::at(f));
    }
    return bins;
}

StackOptions stack_options(const RunConfig& cfg, const ScanAperture& aperture, int threads) {
    StackOptions s;
    const auto& r = cfg.reconstruction;
    s.method = r.method;
    s.direct.taper.kind = r.taper;
    s.direct.kernel = r.kernel;
    s.direct.range_compensation = r.range_compensation;
    s.direct.bin_mode = r.bin_mode;
    s.direct.threads = threads;
    s.angular.pad_factor = r.pad_factor;
    s.angular.min_extent_m = r.min_extent_m;
    s.angular.evanescent = r.evanescent;
    s.angular.fold_replicas = r.fold_replicas;
    s.angular.taper.kind = r.taper;
    s.grid = r.grid.value_or(SliceGrid::of_aperture(aperture));
    return s;
}

namespace {

std::string num(double v) { return format_number(v); }

std::string vec(std::initializer_list<double> v) {
    std::string s = "[";
    bool first = true;
    for (double x : v) {
        s += (first ? "" : ", ") + num(x);
        first = false;
    }
    return s + "]";
}

std::string vec(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + num(v[k]);
    return s + "]";
}

std::string point(const Point3& p) { return vec({p.x, p.y, p.z}); }

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

void emit_scene_body(std::ostringstream& o, const Scene& scene, const BandLimits& band) {
    o << "[scene]\n";
    o << "band_hz = " << vec({band.min_hz, band.max_hz}) << "\n";
    for (const auto& e : scene.emitters) {
        o << "\n[[scene.emitter]]\n";
        o << "position = " << point(e.position) << "\n";
        o << "carrier_hz = " << num(e.carrier_hz) << "\n";
        o << "power_scale = " << num(e.power_scale) << "\n";
    }
    for (const auto& s : scene.scatterers) {
        o << "\n[[scene.scatterer]]\n";
        o << "position = " << point(s.position) << "\n";
        o << "reflectivity = " << vec({s.reflectivity.real(), s.reflectivity.imag()}) << "\n";
    }
    if (scene.wall) {
        o << "\n[scene.wall]\n";
        o << "z_front = " << num(scene.wall->z_front) << "\n";
        o << "thickness = " << num(scene.wall->thickness) << "\n";
        o << "rel_permittivity = " << num(scene.wall->rel_permittivity) << "\n";
        o << "loss_factor = " << num(scene.wall->loss_factor) << "\n";
    }
}

}  // namespace

std::string emit_scene(const Scene& scene) {
    std::ostringstream o;
    emit_scene_body(o, scene, BandLimits{});
    return o.str();
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream o;
    o << "seed = " << cfg.seed << "\n";
    o << "snr_db = " << num(cfg.snr_db) << "\n";
    if (cfg.noise_power) o << "noise_power = " << num(*cfg.noise_power) << "\n";
    o << "medium_access = " << (cfg.medium_access == MediumAccess::TimeShared ? "\"time_shared\"" : "\"simultaneous\"") << "\n";
    o << "output_dir = " << quoted(cfg.output_dir) << "\n\n";
    emit_scene_body(o, cfg.scene, cfg.band);

    const auto& a = cfg.aperture;
    o << "\n[aperture]\n";
    o << "origin = " << point(a.origin) << "\n";
    o << "span = " << vec({a.span_x, a.span_y}) << "\n";
    o << "spacing = " << vec({a.dx, a.dy}) << "\n";
    if (a.reference) o << "reference = " << point(*a.reference) << "\n";
    o << "decimation = " << a.decimation << "\n";
    o << "decimation_mode = " << (a.decimation_mode == DecimationMode::Axis ? "\"axis\"" : "\"track\"") << "\n";

    const auto& w = cfg.waveform;
    o << "\n[waveform]\n";
    o << "carrier_hz = " << num(w.carrier_hz) << "\n";
    o << "chip_rate_hz = " << num(w.chip_rate_hz) << "\n";
    o << "samples_per_chip = " << w.samples_per_chip << "\n";
    o << "guard_chips = " << w.guard_chips << "\n";
    o << "n_bits = " << w.n_bits << "\n";

    o << "\n[window]\n";
    o << "width_s = " << num(cfg.window.width_s) << "\n";
    o << "hop_s = " << num(cfg.window.hop_s) << "\n";
    o << "offset_s = " << num(cfg.window.offset_s) << "\n";
    o << "count = " << cfg.window.count << "\n";

    const auto& r = cfg.reconstruction;
    o << "\n[reconstruction]\n";
    o << "method = " << (r.method == Method::Direct ? "\"direct\"" : "\"angular\"") << "\n";
    o << "kernel = " << (r.kernel == Kernel::Phase ? "\"phase\"" : "\"rayleigh-sommerfeld\"") << "\n";
    o << "taper = " << (r.taper == TaperKind::None ? "\"none\"" : "\"hann\"") << "\n";
    o << "range_compensation = " << (r.range_compensation ? "true" : "false") << "\n";
    o << "z = " << vec(r.z) << "\n";
    if (r.grid) {
        o << "grid_origin = " << vec({r.grid->x0, r.grid->y0}) << "\n";
        o << "grid_size = [" << r.grid->nx << ", " << r.grid->ny << "]\n";
        o << "grid_step = " << vec({r.grid->dx, r.grid->dy}) << "\n";
    }
    o << "bins_hz = " << vec(r.bins_hz) << "\n";
    o << "bin_mode = " << (r.bin_mode == BinMode::Single ? "\"single\"" : "\"incoherent\"") << "\n";
    o << "correlation = " << (r.correlation == Correlation::Conjugate ? "\"conjugate\"" : "\"literal\"") << "\n";
    o << "pad_factor = " << r.pad_factor << "\n";
    o << "min_extent_m = " << num(r.min_extent_m) << "\n";
    o << "evanescent = " << (r.evanescent == Evanescent::Zero ? "\"zero\"" : "\"decay\"") << "\n";
    o << "fold_replicas = " << (r.fold_replicas ? "true" : "false") << "\n";
    o << "background = " << (r.background ? "true" : "false") << "\n";

    const auto& an = cfg.analysis;
    o << "\n[analysis]\n";
    o << "crest_prominence = " << num(an.crest_prominence) << "\n";
    o << "focus_metric = " << (an.focus_metric == FocusMetric::Peak ? "\"peak\"" : "\"sharpness\"") << "\n";
    o << "epsilon = " << num(an.epsilon) << "\n";
    o << "profile_axis = " << (an.profile_axis == Axis::X ? "\"x\"" : "\"y\"") << "\n";
    if (an.profile_at) o << "profile_at = " << num(*an.profile_at) << "\n";
    o << "intensity = " << (an.intensity ? "true" : "false") << "\n";
    return o.str();
}

Scene load_scene(std::string_view text) {
    const TomlTable root = parse_toml(text);
    Context ctx;
    Section sec(&root, "", ctx);
    Section scene = sec.child("scene");
    BandLimits band;
    return read_scene(scene, band);
}

}  // namespace wifiholo
