#pragma once

#include "harmony/simulation.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace harmony {

enum class SweepAxis {
    CoefficientC,
    CoefficientD,
    InterpersonalDistance,
    TrackingDistance,
    Density,
    Environment,
    Condition,
};

const char* toString(SweepAxis axis);
/// Accepts the CSV/CLI spelling (coefficient_c, tracking_distance, ...).
SweepAxis parseAxis(const std::string& name);

/// Writes one sweep value into a config. Throws ConfigError on a value the
/// axis cannot take.
void applyAxis(ScenarioConfig& config, SweepAxis axis, const std::string& value);

struct ExperimentSpec {
    ScenarioConfig base;
    SweepAxis axis = SweepAxis::CoefficientC;
    std::vector<std::string> values;
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
    int jobs = 1;

    void validate() const;
};

/// One (sweep point, replicate): the paired none / proposed trials.
struct ResultRow {
    std::string axis;
    std::string value;
    std::string environment;
    double density = 0.0;
    double c = 0.0;
    double d = 0.0;
    double interpersonalDistance = 0.0;
    double trackingDistance = 0.0;
    std::uint64_t seed = 0;
    std::size_t socialNone = 0;
    std::size_t socialProposed = 0;
    std::size_t physicalityNone = 0;
    std::size_t physicalityProposed = 0;
    double stableNone = 1.0;      // fraction
    double stableProposed = 1.0;  // fraction
    double meanIngroup = 0.0;     // proposed trial, at decision points
    std::size_t planningEvents = 0;

    std::optional<double> socialReduction() const { return reductionRatio(socialNone, socialProposed); }
    std::optional<double> physicalityReduction() const
    {
        return reductionRatio(physicalityNone, physicalityProposed);
    }
};

/// Runs the trials in input order on up to `jobs` OpenMP threads; the
/// result order never depends on scheduling.
std::vector<TrialMetrics> runTrials(const std::vector<ScenarioConfig>& configs, int jobs);

/// Paired none / proposed trials for every (value, seed).
std::vector<ResultRow> runAblation(const ExperimentSpec& spec);

/// Environment x density x seed, each point paired across conditions.
std::vector<ResultRow> runMatrix(const ScenarioConfig& base, const std::vector<std::string>& environments,
                                 const std::vector<double>& densities, const std::vector<std::uint64_t>& seeds,
                                 int jobs);

/// Replicates of one sweep point folded together. Counts are summed, rates
/// averaged.
struct PointSummary {
    std::string axis;
    std::string value;
    std::string environment;
    double density = 0.0;
    std::size_t replicates = 0;
    std::size_t socialNone = 0;
    std::size_t socialProposed = 0;
    std::size_t physicalityNone = 0;
    std::size_t physicalityProposed = 0;
    double stableProposed = 0.0;
    double meanIngroup = 0.0;

    std::optional<double> socialReduction() const { return reductionRatio(socialNone, socialProposed); }
    std::optional<double> physicalityReduction() const
    {
        return reductionRatio(physicalityNone, physicalityProposed);
    }
};

/// Groups rows by (environment, value) in first-seen order.
std::vector<PointSummary> summarize(const std::vector<ResultRow>& rows);

/// "80% (104/522)": rounded reduction and the (proposed/none) counts.
std::string formatReductionCell(std::size_t noneCount, std::size_t proposedCount);

/// Six significant digits, locale independent.
std::string formatNumber(double value);

std::string csvHeader();
void writeCsv(const std::vector<ResultRow>& rows, std::ostream& out);
/// Throws std::runtime_error naming the path when it cannot be written.
void writeCsvFile(const std::vector<ResultRow>& rows, const std::string& path);

/// Table-shaped text: one block per environment, one column per sweep point.
void writeSummary(const std::vector<ResultRow>& rows, std::ostream& out);

}  // namespace harmony
