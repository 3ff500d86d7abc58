#include "harmony/experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>

namespace harmony {

const char* toString(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::CoefficientC: return "coefficient_c";
    case SweepAxis::CoefficientD: return "coefficient_d";
    case SweepAxis::InterpersonalDistance: return "interpersonal_distance";
    case SweepAxis::TrackingDistance: return "tracking_distance";
    case SweepAxis::Density: return "density";
    case SweepAxis::Environment: return "environment";
    case SweepAxis::Condition: return "condition";
    }
    return "?";
}

SweepAxis parseAxis(const std::string& name)
{
    for (const auto axis : {SweepAxis::CoefficientC, SweepAxis::CoefficientD, SweepAxis::InterpersonalDistance,
                            SweepAxis::TrackingDistance, SweepAxis::Density, SweepAxis::Environment,
                            SweepAxis::Condition}) {
        if (name == toString(axis)) {
            return axis;
        }
    }
    throw ConfigError("axis", "unknown sweep axis '" + name + "'");
}

namespace {

double parseNumber(const std::string& field, const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw ConfigError(field, "expected a number, got '" + text + "'");
    }
    return v;
}

}  // namespace

void applyAxis(ScenarioConfig& config, SweepAxis axis, const std::string& value)
{
    switch (axis) {
    case SweepAxis::CoefficientC:
        config.planner.c = parseNumber("planner.c", value);
        break;
    case SweepAxis::CoefficientD:
        config.planner.d = parseNumber("planner.d", value);
        break;
    case SweepAxis::InterpersonalDistance: {
        // preferred conversation distance: initial placement and the far
        // edge of both the candidate ring and the formation band
        const double dist = parseNumber("interpersonal_distance", value);
        config.interpersonalDistance = dist;
        config.planner.candidateMaxRadius = dist;
        config.proxemics.formationMax = dist;
        break;
    }
    case SweepAxis::TrackingDistance:
        config.avoidance.anticipate = parseNumber("avoidance.tracking_distance", value);
        break;
    case SweepAxis::Density:
        config.density = parseNumber("density", value);
        break;
    case SweepAxis::Environment:
        config.environment = value;
        break;
    case SweepAxis::Condition:
        config.condition = value == "none" ? AvoidanceCondition::None : AvoidanceCondition::Proposed;
        if (value != "none" && value != "proposed") {
            throw ConfigError("condition", "expected 'none' or 'proposed', got '" + value + "'");
        }
        break;
    }
    config.validate();
}

void ExperimentSpec::validate() const
{
    if (values.empty()) throw ConfigError("values", "sweep needs at least one value");
    if (seeds.empty()) throw ConfigError("seeds", "need at least one replicate");
    if (jobs < 1) throw ConfigError("jobs", "must be >= 1");
    base.validate();
    for (const auto& v : values) {
        ScenarioConfig probe = base;
        applyAxis(probe, axis, v);
    }
}

std::vector<TrialMetrics> runTrials(const std::vector<ScenarioConfig>& configs, int jobs)
{
    std::vector<TrialMetrics> out(configs.size());
    const auto n = static_cast<std::ptrdiff_t>(configs.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = runTrial(configs[static_cast<std::size_t>(i)]);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

namespace {

ResultRow pairRow(const std::string& axis, const std::string& value, const ScenarioConfig& cfg,
                  const TrialMetrics& none, const TrialMetrics& proposed)
{
    ResultRow row;
    row.axis = axis;
    row.value = value;
    row.environment = cfg.environment;
    row.density = cfg.density;
    row.c = cfg.planner.c;
    row.d = cfg.planner.d;
    row.interpersonalDistance = cfg.interpersonalDistance;
    row.trackingDistance = cfg.avoidance.anticipate;
    row.seed = cfg.seed;
    row.socialNone = none.socialConflicts;
    row.socialProposed = proposed.socialConflicts;
    row.physicalityNone = none.physicalityConflicts;
    row.physicalityProposed = proposed.physicalityConflicts;
    row.stableNone = none.stablePercentage;
    row.stableProposed = proposed.stablePercentage;
    row.meanIngroup = proposed.meanIngroupAtDecisions();
    row.planningEvents = proposed.planningEvents;
    return row;
}

struct PendingPoint {
    std::string axis;
    std::string value;
    ScenarioConfig config;
};

std::vector<ResultRow> runPaired(const std::vector<PendingPoint>& points, int jobs)
{
    std::vector<ScenarioConfig> trials;
    trials.reserve(points.size() * 2);
    for (const auto& p : points) {
        ScenarioConfig none = p.config;
        none.condition = AvoidanceCondition::None;
        ScenarioConfig proposed = p.config;
        proposed.condition = AvoidanceCondition::Proposed;
        trials.push_back(none);
        trials.push_back(proposed);
    }
    const auto metrics = runTrials(trials, jobs);
    std::vector<ResultRow> rows;
    rows.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        rows.push_back(pairRow(points[i].axis, points[i].value, points[i].config, metrics[2 * i], metrics[2 * i + 1]));
    }
    return rows;
}

}  // namespace

std::vector<ResultRow> runAblation(const ExperimentSpec& spec)
{
    spec.validate();
    std::vector<PendingPoint> points;
    for (const auto& value : spec.values) {
        for (const auto seed : spec.seeds) {
            ScenarioConfig cfg = spec.base;
            applyAxis(cfg, spec.axis, value);
            cfg.seed = seed;
            points.push_back({toString(spec.axis), value, cfg});
        }
    }
    return runPaired(points, spec.jobs);
}

std::vector<ResultRow> runMatrix(const ScenarioConfig& base, const std::vector<std::string>& environments,
                                 const std::vector<double>& densities, const std::vector<std::uint64_t>& seeds,
                                 int jobs)
{
    if (environments.empty() || densities.empty() || seeds.empty()) {
        throw ConfigError("matrix", "environments, densities and seeds must be non-empty");
    }
    std::vector<PendingPoint> points;
    for (const auto& env : environments) {
        for (const double density : densities) {
            for (const auto seed : seeds) {
                ScenarioConfig cfg = base;
                cfg.environment = env;
                cfg.density = density;
                cfg.seed = seed;
                cfg.validate();
                points.push_back({"density", formatNumber(density), cfg});
            }
        }
    }
    return runPaired(points, jobs);
}

std::vector<PointSummary> summarize(const std::vector<ResultRow>& rows)
{
    std::vector<PointSummary> out;
    std::map<std::pair<std::string, std::string>, std::size_t> slot;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.environment, r.value);
        auto it = slot.find(key);
        if (it == slot.end()) {
            it = slot.emplace(key, out.size()).first;
            PointSummary s;
            s.axis = r.axis;
            s.value = r.value;
            s.environment = r.environment;
            s.density = r.density;
            out.push_back(s);
        }
        auto& s = out[it->second];
        ++s.replicates;
        s.socialNone += r.socialNone;
        s.socialProposed += r.socialProposed;
        s.physicalityNone += r.physicalityNone;
        s.physicalityProposed += r.physicalityProposed;
        s.stableProposed += r.stableProposed;
        s.meanIngroup += r.meanIngroup;
    }
    for (auto& s : out) {
        s.stableProposed /= static_cast<double>(s.replicates);
        s.meanIngroup /= static_cast<double>(s.replicates);
    }
    return out;
}

std::string formatReductionCell(std::size_t noneCount, std::size_t proposedCount)
{
    const auto ratio = reductionRatio(static_cast<double>(noneCount), static_cast<double>(proposedCount));
    const std::string counts = "(" + std::to_string(proposedCount) + "/" + std::to_string(noneCount) + ")";
    if (!ratio) {
        return "n/a " + counts;
    }
    return std::to_string(std::lround(*ratio * 100.0)) + "% " + counts;
}

std::string formatNumber(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string csvHeader()
{
    return "axis,value,environment,density,c,d,interpersonal_distance,tracking_distance,seed,"
           "social_none,social_proposed,physicality_none,physicality_proposed,"
           "social_reduction,physicality_reduction,stable_pct_none,stable_pct_proposed,"
           "mean_ingroup,planning_events";
}

void writeCsv(const std::vector<ResultRow>& rows, std::ostream& out)
{
    const auto opt = [](const std::optional<double>& v) { return v ? formatNumber(*v) : std::string("NA"); };
    out << csvHeader() << '\n';
    for (const auto& r : rows) {
        out << r.axis << ',' << r.value << ',' << r.environment << ',' << formatNumber(r.density) << ','
            << formatNumber(r.c) << ',' << formatNumber(r.d) << ',' << formatNumber(r.interpersonalDistance) << ','
            << formatNumber(r.trackingDistance) << ',' << r.seed << ',' << r.socialNone << ',' << r.socialProposed
            << ',' << r.physicalityNone << ',' << r.physicalityProposed << ',' << opt(r.socialReduction()) << ','
            << opt(r.physicalityReduction()) << ',' << formatNumber(r.stableNone * 100.0) << ','
            << formatNumber(r.stableProposed * 100.0) << ',' << formatNumber(r.meanIngroup) << ','
            << r.planningEvents << '\n';
    }
}

void writeCsvFile(const std::vector<ResultRow>& rows, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    writeCsv(rows, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

void writeSummary(const std::vector<ResultRow>& rows, std::ostream& out)
{
    const auto points = summarize(rows);
    std::vector<std::string> envs;
    for (const auto& p : points) {
        if (std::find(envs.begin(), envs.end(), p.environment) == envs.end()) {
            envs.push_back(p.environment);
        }
    }
    const auto pad = [](std::string s, std::size_t w) {
        if (s.size() < w) s.append(w - s.size(), ' ');
        return s;
    };
    constexpr std::size_t kLabel = 40;
    constexpr std::size_t kCell = 18;
    for (const auto& env : envs) {
        std::vector<const PointSummary*> cols;
        for (const auto& p : points) {
            if (p.environment == env) cols.push_back(&p);
        }
        out << "environment: " << env << "  (replicates per point: " << cols.front()->replicates << ")\n";
        out << pad(cols.front()->axis, kLabel);
        for (const auto* p : cols) out << pad(p->value, kCell);
        out << '\n' << pad("Reduce ratio of social conflict", kLabel);
        for (const auto* p : cols) out << pad(formatReductionCell(p->socialNone, p->socialProposed), kCell);
        out << '\n' << pad("Reduce ratio of physicality conflict", kLabel);
        for (const auto* p : cols) out << pad(formatReductionCell(p->physicalityNone, p->physicalityProposed), kCell);
        out << '\n' << pad("Time percentage of stable interaction", kLabel);
        for (const auto* p : cols) out << pad(std::to_string(std::lround(p->stableProposed * 100.0)) + "%", kCell);
        out << '\n' << pad("Mean in-group comfort at decisions", kLabel);
        for (const auto* p : cols) out << pad(formatNumber(p->meanIngroup), kCell);
        out << "\n\n";
    }
}

}  // namespace harmony
