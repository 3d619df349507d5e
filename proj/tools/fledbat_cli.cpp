// Command-line front end: run experiment presets or config files, integrate
// the fluid model, and aggregate summary CSVs.
//
//   fledbat run <preset|config-file> [--out DIR] [--seed N] [--reps N]
//   fledbat fluid <config-file> [--out DIR]
//   fledbat report <dir>
//   fledbat presets
//
// FLEDBAT_OUT overrides the output root directory. Exit code 0 on success;
// validation failures print one machine-readable "error: ..." line each.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fledbat/runner.hpp"

namespace fs = std::filesystem;
using namespace fledbat;

namespace {

fs::path output_root() {
    if (const char* env = std::getenv("FLEDBAT_OUT"))
        return fs::path(env);
    return fs::path("out");
}

Preset preset_or_config(const std::string& target) {
    const auto names = preset_names();
    if (std::find(names.begin(), names.end(), target) != names.end())
        return preset(target);
    Preset p;
    p.name = fs::path(target).stem().string();
    p.points.push_back(ScenarioPoint{p.name, load_config_file(target)});
    p.write_series = true;
    return p;
}

int cmd_run(const std::string& target, std::string out, std::uint64_t seed, int reps) {
    Preset p = preset_or_config(target);
    RunOptions opts;
    opts.out_dir = out.empty() ? output_root() / p.name : fs::path(out);
    opts.seed_override = seed;
    opts.reps_override = reps;
    const auto rows = run_preset(p, opts);
    std::cout << format_report(aggregate_rows(rows));
    std::cout << "artifacts: " << opts.out_dir.string() << "\n";
    return 0;
}

int cmd_fluid(const std::string& config_path, std::string out) {
    const ScenarioConfig config = load_config_file(config_path);
    const FluidParams params = fluid_params_for(config);
    IntegrateOptions io;
    io.sample_every = ms(config.sample_ms);
    const auto series =
        integrate(params, FluidState::zero(params.n_flows), config.duration_s, io);

    fs::path out_dir = out.empty() ? output_root() / "fluid" : fs::path(out);
    fs::create_directories(out_dir);
    const fs::path path = out_dir / "fluid.csv";
    std::ofstream file(path, std::ios::binary);
    write_fluid_csv(file, series);

    const Equilibrium eq = equilibrium(params);
    std::cout << "equilibrium: X_i* = " << format_double(eq.rates[0])
              << " pkt/s, Q* = " << format_double(eq.queue)
              << " pkt, zeta* = " << format_double(eq.zeta_critical)
              << ", theta = " << format_double(eq.theta) << " 1/s\n";
    std::cout << "artifacts: " << path.string() << "\n";
    return 0;
}

int cmd_report(const std::string& dir) {
    std::ifstream in(fs::path(dir) / "summary.csv");
    if (!in) {
        std::cerr << "error: report: no summary.csv under '" << dir << "'\n";
        return 1;
    }
    std::cout << format_report(aggregate_rows(read_summary_csv(in)));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"packet-level simulator and fluid-model analyzer for "
                 "low-priority delay-based congestion control"};
    app.require_subcommand(1);

    std::string target, out;
    std::uint64_t seed = 0;
    int reps = 0;

    auto* run = app.add_subcommand("run", "run a preset or a config file");
    run->add_option("target", target, "preset name or config path")->required();
    run->add_option("--out", out, "output directory");
    run->add_option("--seed", seed, "base seed (overrides the config)");
    run->add_option("--reps", reps, "repetitions (overrides the config)");

    std::string fluid_config, fluid_out;
    auto* fluid = app.add_subcommand("fluid", "integrate the fluid model for a config");
    fluid->add_option("config", fluid_config, "config path")->required();
    fluid->add_option("--out", fluid_out, "output directory");

    std::string report_dir;
    auto* report = app.add_subcommand("report", "aggregate a summary.csv directory");
    report->add_option("dir", report_dir, "artifact directory")->required();

    auto* presets_cmd = app.add_subcommand("presets", "list known presets");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(target, out, seed, reps);
        if (fluid->parsed())
            return cmd_fluid(fluid_config, fluid_out);
        if (report->parsed())
            return cmd_report(report_dir);
        if (presets_cmd->parsed()) {
            for (const std::string& name : preset_names())
                std::cout << name << "\n    " << preset(name).description << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        for (const std::string& p : e.problems)
            std::cerr << "error: config: " << p << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
