// Command line front end: single trials, one-factor sweeps and the
// environment x density matrix.

#include "harmony/experiment.hpp"
#include "harmony/scenario.hpp"
#include "harmony/simulation.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace harmony;

namespace {

std::vector<std::string> splitList(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(' ');
        const auto e = item.find_last_not_of(' ');
        if (b != std::string::npos) {
            out.push_back(item.substr(b, e - b + 1));
        }
    }
    return out;
}

std::vector<std::uint64_t> seedList(const std::string& seeds, int replicates)
{
    std::vector<std::uint64_t> out;
    if (!seeds.empty()) {
        for (const auto& s : splitList(seeds)) {
            out.push_back(std::stoull(s));
        }
        return out;
    }
    for (int i = 1; i <= replicates; ++i) {
        out.push_back(static_cast<std::uint64_t>(i));
    }
    return out;
}

void ensureDir(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
    }
}

std::ofstream openOut(const fs::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    return out;
}

void writeTrialCsv(const ScenarioConfig& cfg, const TrialMetrics& m, std::ostream& out)
{
    out << "environment,condition,density,seed,duration,social,physicality,stable_time,adjusting_time,"
           "stable_pct,planning_events,mean_ingroup\n";
    out << cfg.environment << ',' << toString(cfg.condition) << ',' << formatNumber(cfg.density) << ',' << cfg.seed
        << ',' << formatNumber(m.duration) << ',' << m.socialConflicts << ',' << m.physicalityConflicts << ','
        << formatNumber(m.stableTime) << ',' << formatNumber(m.adjustingTime) << ','
        << formatNumber(m.stablePercentage * 100.0) << ',' << m.planningEvents << ','
        << formatNumber(m.meanIngroupAtDecisions()) << '\n';
}

void writeEventsCsv(const TrialMetrics& m, std::ostream& out)
{
    out << "time,kind,pedestrian\n";
    for (const auto& e : m.events) {
        out << formatNumber(e.time) << ',' << toString(e.kind) << ',' << e.pedestrianId << '\n';
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Conflict-avoidance simulator for a virtual human sharing public space with pedestrians"};
    app.require_subcommand(1);

    std::string scenarioPath;
    std::string outDir = "out";
    double duration = -1.0;
    int jobs = 1;

    auto* simulate = app.add_subcommand("simulate", "run one trial");
    std::uint64_t seed = 0;
    bool seedGiven = false;
    bool trace = false;
    std::string condition;
    simulate->add_option("--scenario", scenarioPath, "JSON scenario file (defaults when omitted)");
    simulate->add_option("--seed", seed, "random seed")->each([&](const std::string&) { seedGiven = true; });
    simulate->add_option("--duration", duration, "trial length in seconds");
    simulate->add_option("--condition", condition, "none | proposed");
    simulate->add_option("--out", outDir, "output directory")->required();
    simulate->add_flag("--trace", trace, "also write trace.jsonl");

    auto* ablate = app.add_subcommand("ablate", "one-factor sweep with paired none/proposed trials");
    std::string axisName;
    std::string values;
    std::string seeds;
    int replicates = 5;
    ablate->add_option("--axis", axisName,
                       "coefficient_c | coefficient_d | interpersonal_distance | tracking_distance | density | "
                       "environment | condition")
        ->required();
    ablate->add_option("--values", values, "comma separated sweep values")->required();
    ablate->add_option("--scenario", scenarioPath, "base scenario");
    ablate->add_option("--replicates", replicates, "seeds 1..N when --seeds is not given");
    ablate->add_option("--seeds", seeds, "comma separated seeds");
    ablate->add_option("--duration", duration, "trial length in seconds");
    ablate->add_option("--jobs", jobs, "worker threads");
    ablate->add_option("--out", outDir, "output directory");

    auto* matrix = app.add_subcommand("matrix", "environments x densities x conditions");
    std::string environments = "square20,passage";
    std::string densities = "0.05,0.1,0.15,0.2,0.25";
    matrix->add_option("--scenario", scenarioPath, "base scenario");
    matrix->add_option("--replicates", replicates, "seeds 1..N when --seeds is not given");
    matrix->add_option("--seeds", seeds, "comma separated seeds");
    matrix->add_option("--environments", environments, "comma separated environments");
    matrix->add_option("--densities", densities, "comma separated densities");
    matrix->add_option("--duration", duration, "trial length in seconds");
    matrix->add_option("--jobs", jobs, "worker threads");
    matrix->add_option("--out", outDir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig base = scenarioPath.empty() ? ScenarioConfig{} : loadScenarioFile(scenarioPath);
        if (duration > 0.0) {
            base.duration = duration;
        }

        if (*simulate) {
            if (seedGiven) base.seed = seed;
            if (!condition.empty()) base.condition = parseCondition(condition);
            base.validate();
            ensureDir(outDir);
            TrialMetrics metrics;
            if (trace) {
                auto traceOut = openOut(fs::path(outDir) / "trace.jsonl");
                metrics = runTrial(base, &traceOut);
            } else {
                metrics = runTrial(base);
            }
            auto trialOut = openOut(fs::path(outDir) / "trial.csv");
            writeTrialCsv(base, metrics, trialOut);
            auto eventsOut = openOut(fs::path(outDir) / "events.csv");
            writeEventsCsv(metrics, eventsOut);
            std::cout << "social=" << metrics.socialConflicts << " physicality=" << metrics.physicalityConflicts
                      << " stable=" << formatNumber(metrics.stablePercentage * 100.0) << "%\n";
            return 0;
        }

        std::vector<ResultRow> rows;
        std::string csvName;
        if (*ablate) {
            ExperimentSpec spec;
            spec.base = base;
            spec.axis = parseAxis(axisName);
            spec.values = splitList(values);
            spec.seeds = seedList(seeds, replicates);
            spec.jobs = jobs;
            rows = runAblation(spec);
            csvName = std::string("ablation_") + toString(spec.axis) + ".csv";
        } else {
            std::vector<double> dens;
            for (const auto& d : splitList(densities)) {
                dens.push_back(std::stod(d));
            }
            rows = runMatrix(base, splitList(environments), dens, seedList(seeds, replicates), jobs);
            csvName = "matrix.csv";
        }
        ensureDir(outDir);
        writeCsvFile(rows, (fs::path(outDir) / csvName).string());
        writeSummary(rows, std::cout);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
