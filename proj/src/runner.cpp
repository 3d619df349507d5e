#include "fledbat/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "fledbat/metrics.hpp"

namespace fledbat {

namespace {

Protocol breakdown_protocol(const ScenarioConfig& config) {
    for (const FlowSpec& f : config.flows)
        if (f.protocol == Protocol::Fledbat)
            return Protocol::Fledbat;
    return config.flows.front().protocol;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

} // namespace

SummaryRow summarize(const std::string& scenario_id, const ScenarioConfig& config,
                     std::uint64_t seed, const SimulationTrace& trace) {
    SummaryRow row;
    row.scenario_id = scenario_id;
    row.seed = seed;
    const RateSample window = stationary_window(trace, config.measure_discard_s);
    const Eigen::VectorXd rates = rates_vector(window);
    row.fairness = jain_index(rates);
    const double capacity_bytes_per_s = trace.capacity_pps * trace.packet_bytes;
    row.efficiency = efficiency(rates, capacity_bytes_per_s);
    row.breakdown = protocol_breakdown(window, breakdown_protocol(config));
    row.mean_queue_pkts = mean_queue(trace, window.t_start, window.t_end);
    return row;
}

std::vector<SummaryRow> run_preset(const Preset& preset, const RunOptions& opts) {
    namespace fs = std::filesystem;
    fs::create_directories(opts.out_dir);

    std::vector<SummaryRow> rows;
    std::ostringstream manifest;
    manifest << "# " << kVersion << "\n";
    manifest << "preset = " << preset.name << "\n";

    for (const ScenarioPoint& point : preset.points) {
        ScenarioConfig config = point.config;
        if (opts.seed_override != 0)
            config.seed = opts.seed_override;
        if (opts.reps_override > 0)
            config.repetitions = opts.reps_override;

        manifest << "\n[" << point.id << "]\n" << emit_config(config);

        fs::path point_dir = opts.out_dir;
        if (preset.points.size() > 1)
            point_dir /= point.id;

        for (int rep = 0; rep < config.repetitions; ++rep) {
            const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(rep);
            SimulationTrace trace = run_simulation(config, seed);
            rows.push_back(summarize(point.id, config, seed, trace));

            if (preset.write_series) {
                fs::path run_dir = point_dir / ("run-" + std::to_string(seed));
                fs::create_directories(run_dir);
                std::ostringstream flows, queue, rates;
                write_flow_series_csv(flows, trace);
                write_queue_csv(queue, trace);
                write_rates_csv(rates, trace);
                write_file(run_dir / "flows.csv", flows.str());
                write_file(run_dir / "queue.csv", queue.str());
                write_file(run_dir / "rates.csv", rates.str());
            }
        }

        if (preset.with_fluid) {
            const FluidParams params = fluid_params_for(config);
            IntegrateOptions io;
            io.sample_every = ms(config.sample_ms);
            const auto series =
                integrate(params, FluidState::zero(params.n_flows), config.duration_s, io);
            fs::create_directories(point_dir);
            std::ostringstream fluid;
            write_fluid_csv(fluid, series);
            write_file(point_dir / "fluid.csv", fluid.str());
        }

        if (!opts.quiet)
            std::cerr << "ran " << preset.name << " / " << point.id << " ("
                      << config.repetitions << " runs)\n";
    }

    std::ostringstream summary;
    write_summary_csv(summary, rows);
    write_file(opts.out_dir / "summary.csv", summary.str());
    write_file(opts.out_dir / "manifest.txt", manifest.str());
    return rows;
}

std::vector<Aggregate> aggregate_rows(const std::vector<SummaryRow>& rows) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<const SummaryRow*>> by_id;
    for (const SummaryRow& r : rows) {
        auto [it, inserted] = by_id.try_emplace(r.scenario_id);
        if (inserted)
            order.push_back(r.scenario_id);
        it->second.push_back(&r);
    }

    auto mean_std = [](const std::vector<double>& xs) {
        const double n = static_cast<double>(xs.size());
        double mean = 0;
        for (double x : xs)
            mean += x;
        mean /= n;
        double var = 0;
        for (double x : xs)
            var += (x - mean) * (x - mean);
        return std::pair<double, double>{mean, xs.size() > 1 ? std::sqrt(var / (n - 1)) : 0.0};
    };

    std::vector<Aggregate> out;
    for (const std::string& id : order) {
        const auto& group = by_id[id];
        Aggregate a;
        a.scenario_id = id;
        a.n = static_cast<int>(group.size());
        std::vector<double> f, e, b, q;
        for (const SummaryRow* r : group) {
            f.push_back(r->fairness);
            e.push_back(r->efficiency);
            q.push_back(r->mean_queue_pkts);
            if (r->breakdown)
                b.push_back(*r->breakdown);
        }
        std::tie(a.fairness_mean, a.fairness_std) = mean_std(f);
        std::tie(a.efficiency_mean, a.efficiency_std) = mean_std(e);
        std::tie(a.queue_mean, a.queue_std) = mean_std(q);
        if (!b.empty()) {
            a.has_breakdown = true;
            std::tie(a.breakdown_mean, a.breakdown_std) = mean_std(b);
        }
        out.push_back(a);
    }
    return out;
}

std::string format_report(const std::vector<Aggregate>& aggregates) {
    std::ostringstream out;
    out << "scenario_id                              n  fairness          efficiency        "
           "breakdown         mean_queue\n";
    char line[256];
    for (const Aggregate& a : aggregates) {
        char breakdown[40] = "     --          ";
        if (a.has_breakdown)
            std::snprintf(breakdown, sizeof breakdown, "%6.4f ± %6.4f", a.breakdown_mean,
                          a.breakdown_std);
        std::snprintf(line, sizeof line,
                      "%-40s %2d  %6.4f ± %6.4f  %6.4f ± %6.4f  %s  %7.2f ± %6.2f\n",
                      a.scenario_id.c_str(), a.n, a.fairness_mean, a.fairness_std,
                      a.efficiency_mean, a.efficiency_std, breakdown, a.queue_mean, a.queue_std);
        out << line;
    }
    return out.str();
}

} // namespace fledbat
