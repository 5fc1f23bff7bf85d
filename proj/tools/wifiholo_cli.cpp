// Command-line front end: validate, simulate, reconstruct, analyze,
// run-scenario, list-scenarios and waveform dump.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "wifiholo/config.hpp"
#include "wifiholo/io.hpp"
#include "wifiholo/pipeline.hpp"
#include "wifiholo/scenarios.hpp"
#include "wifiholo/seed.hpp"

namespace fs = std::filesystem;
using namespace wifiholo;

namespace {

constexpr const char* kOutEnv = "WIFIHOLO_OUT";

fs::path output_dir(const std::string& flag, const std::string& from_config) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv(kOutEnv); env && *env) return env;
    return from_config;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides, bool lenient) {
    std::vector<std::string> warnings;
    ParseOptions opt;
    opt.overrides = overrides;
    opt.mode = lenient ? ParseMode::Lenient : ParseMode::Strict;
    opt.warnings = &warnings;
    RunConfig cfg;
    try {
        cfg = parse_config(read_text_file(path), opt);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what(), e.line(), e.key());
    }
    for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << "\n";
    return cfg;
}

void dump_channels(const RunConfig& cfg, const fs::path& path) {
    const auto aperture = full_aperture(cfg);
    const auto bin = FrequencyBin::at(cfg.waveform.carrier_hz);
    std::vector<ChannelRow> rows;
    const auto order = s_order_positions(aperture);
    for (std::size_t p = 0; p < order.size(); ++p) {
        cdouble total{0.0, 0.0};
        for (const auto& e : cfg.scene.emitters)
            total += std::sqrt(e.power_scale) * channel_response(cfg.scene, e.position, order[p].position, bin).total();
        rows.push_back({p, total});
    }
    write_channel_csv(rows, path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Passive Wi-Fi holographic imaging simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "wifiholo 0.1.0");

    int threads = 1;
    std::string out_flag;
    std::vector<std::string> overrides;
    bool lenient = false;

    std::string config_path;
    auto* validate = app.add_subcommand("validate", "Check a configuration file without running");
    validate->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    validate->add_flag("--lenient", lenient, "Warn about unknown keys instead of failing");

    bool dump = false;
    auto* simulate_cmd = app.add_subcommand("simulate", "Scene to hologram CSV");
    simulate_cmd->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    simulate_cmd->add_flag("--dump-channels", dump, "Also write per-position channel responses");

    std::string hologram_path, background_path;
    auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Hologram CSV to image volume and slices");
    reconstruct_cmd->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    reconstruct_cmd->add_option("--hologram", hologram_path, "Hologram CSV")->required()->check(CLI::ExistingFile);
    reconstruct_cmd->add_option("--background", background_path, "Background hologram CSV for normalization")
        ->check(CLI::ExistingFile);

    std::string volume_path;
    auto* analyze_cmd = app.add_subcommand("analyze", "Image volume to focus curve, profile and crests");
    analyze_cmd->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
    analyze_cmd->add_option("--volume", volume_path, "Volume raw file (manifest alongside)")->required()->check(CLI::ExistingFile);

    std::string scenario_name;
    bool oracle = false;
    auto* scenario_cmd = app.add_subcommand("run-scenario", "Run a canned experiment end to end");
    scenario_cmd->add_option("name", scenario_name, "Scenario name (see list-scenarios)")->required();
    scenario_cmd->add_flag("--oracle", oracle, "Also compare angular-spectrum and direct reconstructions");

    auto* list_cmd = app.add_subcommand("list-scenarios", "Print available scenario names");

    auto* waveform_cmd = app.add_subcommand("waveform", "Waveform utilities");
    waveform_cmd->require_subcommand(1);
    auto* dump_cmd = waveform_cmd->add_subcommand("dump", "Write envelope samples as CSV (t,re,im)");
    std::string wf_config, wf_out;
    int wf_bits = 4;
    std::uint64_t wf_seed = 1;
    int wf_guard = -1;
    dump_cmd->add_option("--config", wf_config, "Take waveform parameters and seed from a configuration file")
        ->check(CLI::ExistingFile);
    dump_cmd->add_option("--bits", wf_bits, "Number of payload bits")->check(CLI::PositiveNumber);
    dump_cmd->add_option("--seed", wf_seed, "Master seed when no configuration is given");
    dump_cmd->add_option("--guard-chips", wf_guard, "Cyclic-prefix length in chips")->check(CLI::Range(0, 11));
    dump_cmd->add_option("--out", wf_out, "Output CSV (default: stdout)");

    for (auto* cmd : {simulate_cmd, reconstruct_cmd, analyze_cmd, scenario_cmd}) {
        cmd->add_option("--out", out_flag, std::string("Output directory (default: $") + kOutEnv + " or the config's output_dir)");
        cmd->add_option("--threads", threads, "Worker threads; outputs do not depend on it")->check(CLI::PositiveNumber);
        cmd->add_option("--override", overrides, "Override a config value, e.g. aperture.decimation=2");
        cmd->add_flag("--lenient", lenient, "Warn about unknown config keys instead of failing");
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            load_config(config_path, {}, lenient);
            std::cout << config_path << ": ok\n";
            return 0;
        }
        if (list_cmd->parsed()) {
            for (const auto& n : scenario_names()) std::cout << n << "\n";
            return 0;
        }
        if (dump_cmd->parsed()) {
            WaveformSpec spec;
            std::uint64_t seed = wf_seed;
            if (!wf_config.empty()) {
                const auto cfg = load_config(wf_config, {}, false);
                spec = cfg.waveform;
                seed = cfg.seed;
            }
            if (wf_guard >= 0) spec.guard_chips = wf_guard;
            const auto bits = payload_bits(derive_seed(seed, "waveform-dump"), static_cast<std::size_t>(wf_bits));
            const auto ts = dsss_baseband(bits, spec);
            std::string csv = "t,re,im\n";
            for (std::size_t n = 0; n < ts.samples.size(); ++n)
                csv += format_number(ts.t0_s + static_cast<double>(n) / ts.sample_rate_hz) + "," +
                       format_number(ts.samples[n].real()) + "," + format_number(ts.samples[n].imag()) + "\n";
            if (wf_out.empty())
                std::cout << csv;
            else
                write_text_file(wf_out, csv);
            return 0;
        }
        if (scenario_cmd->parsed()) {
            Scenario sc = with_overrides(scenario_by_name(scenario_name), overrides);
            const fs::path dir = output_dir(out_flag, (fs::path(sc.config.output_dir) / sc.name).string());
            ScenarioRunOptions opt;
            opt.threads = threads;
            opt.out_dir = dir;
            opt.oracle_check = oracle;
            const auto result = run_scenario(sc, opt);
            std::cout << read_text_file(dir / files::summary);
            std::cout << "outputs written to " << dir.string() << "\n";
            return result.passed() ? 0 : 3;
        }

        const RunConfig cfg = load_config(config_path, overrides, lenient);
        const fs::path dir = output_dir(out_flag, cfg.output_dir);
        fs::create_directories(dir);

        if (simulate_cmd->parsed()) {
            write_text_file(dir / files::config, emit_config(cfg));
            write_hologram_csv(simulate(cfg, threads), dir / files::hologram);
            if (cfg.reconstruction.background && !cfg.scene.scatterers.empty())
                write_hologram_csv(simulate_background(cfg, threads), dir / files::hologram_background);
            if (dump) dump_channels(cfg, dir / "channels.csv");
            std::cout << "hologram written to " << (dir / files::hologram).string() << "\n";
            return 0;
        }
        if (reconstruct_cmd->parsed()) {
            const Hologram h = read_hologram_csv(hologram_path);
            const auto stack = reconstruct(cfg, h, threads);
            if (stack.empty()) throw std::invalid_argument("reconstruction.z is empty");
            write_stack(stack, dir, "volume_object");
            if (!background_path.empty()) {
                const auto bstack = reconstruct(cfg, read_hologram_csv(background_path), threads);
                write_stack(bstack, dir, "volume_background");
                std::vector<ImageSlice> norm;
                for (std::size_t k = 0; k < stack.size(); ++k)
                    norm.push_back(normalize_image(stack[k], bstack[k], {cfg.analysis.epsilon}));
                write_volume(stack_to_volume(norm), dir / files::volume_normalized);
            }
            std::cout << "volume written to " << (dir / files::volume).string() << "\n";
            return 0;
        }
        if (analyze_cmd->parsed()) {
            const auto stack = volume_to_stack(read_volume(volume_path));
            const auto a = analyze(cfg, stack);
            write_analysis(a, dir);
            std::vector<MetricRow> rows = {{"focus_argmax_z_m", a.focus.argmax_z, "", false, true},
                                           {"crest_count", static_cast<double>(a.crests.size()), "", false, true}};
            for (std::size_t k = 0; k < a.crests.size(); ++k)
                rows.push_back({"crest_" + std::to_string(k + 1) + "_m", a.crests[k], "", false, true});
            write_metrics_csv(rows, dir / files::metrics);
            const auto summary = summary_report("analysis of " + volume_path, rows);
            write_text_file(dir / files::summary, summary);
            std::cout << summary;
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
