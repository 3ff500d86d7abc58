#pragma once

#include "harmony/comfort.hpp"
#include "harmony/geometry.hpp"
#include "harmony/prediction.hpp"
#include "harmony/proxemics.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace harmony {

struct PlannerParams {
    double c = 1.0;    // weight of out-group comfort
    double d = 0.5;    // per-meter move cost
    double territoryRadius = 0.5;  // m, capsule half-width around the dyad

    double candidateMinRadius = 0.6;
    double candidateMaxRadius = 1.5;
    double candidateRadiusStep = 0.15;
    double candidateBearingStepDeg = 15.0;
    double wallClearance = 0.3;

    double maxSpeed = 1.5;          // m/s
    double maxTurnRateDeg = 180.0;  // deg/s
    double arrivalTolerance = 0.05;  // m
    double arrivalAngleDeg = 10.0;
    double replanInterval = 0.2;     // s
    double predictionDt = 0.1;       // s
    double horizonCap = 0.5;         // s, forecast lookahead

    // compass search around the best grid points; 0 seeds turns it off
    int refineSeeds = 3;
    double refineMinStep = 0.005;  // m
    int refineMaxSteps = 64;       // per seed

    void validate() const;
    bool operator==(const PlannerParams&) const = default;
};

/// Thrown when there is nothing to choose from.
class PlanningImpossible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CandidatePlan {
    Vec2 position;
    double orientation = 0.0;
    std::optional<ArrangementType> arrangement;  // empty without an F-formation
    double ingroup = 0.0;
    double outgroup = 0.0;
    double moveDistance = 0.0;
    double utility = 0.0;
    std::size_t index = 0;
};

struct ConflictCheck {
    bool conflict = false;
    std::vector<std::uint32_t> pedestrianIds;
};

enum class PlanPhase { Stable, Adjusting };

struct PlanState {
    PlanPhase phase = PlanPhase::Stable;
    std::optional<CandidatePlan> plan;
    double timeInPhase = 0.0;
};

const char* toString(PlanPhase phase);

/// Everything the scorer needs about one planning event.
struct ScoringInput {
    Pose user;
    Vec2 currentVh;
    SpatialContext context;
    std::span<const PredictedTrajectory> trajectories;
    ProxemicsParams proxemics;
    ComfortCoefficients comfort;
    PlannerParams planner;
};

/// Whether any forecast sample enters the capsule of `radius` around `dyad`.
ConflictCheck detectPotentialConflict(const Segment& dyad, std::span<const PredictedTrajectory> trajectories,
                                      double radius);

/// Polar grid around the user filtered to the walkable area; index 0 is
/// always the current VH position.
std::vector<Vec2> generateCandidates(const Pose& user, Vec2 currentVh, const Environment& env,
                                     const PlannerParams& params);

/// Combined utility (ingroup + c * outgroup) / (1 + moveDistance * d).
double utility(double ingroup, double outgroup, double moveDistance, const PlannerParams& params);

CandidatePlan scoreCandidate(Vec2 position, const ScoringInput& input);

/// Reference scorer: one candidate after another.
std::vector<CandidatePlan> scoreCandidatesSerial(std::span<const Vec2> candidates, const ScoringInput& input);
/// OpenMP scorer; element-for-element identical to the serial one.
std::vector<CandidatePlan> scoreCandidatesParallel(std::span<const Vec2> candidates, const ScoringInput& input);

/// Scored grid followed by compass-search refinements around the best
/// `refineSeeds` grid points. Refined points stay inside the candidate
/// annulus and the walkable area; indices continue after the grid.
std::vector<CandidatePlan> evaluateCandidates(std::span<const Vec2> grid, const ScoringInput& input,
                                              const Environment& env, bool parallel);

/// Highest utility; ties go to the shorter move, then the lower index.
/// Throws PlanningImpossible on an empty list.
const CandidatePlan& decide(std::span<const CandidatePlan> candidates);

/// Advances the VH toward the active plan at the speed and turn limits.
std::pair<PlanState, Pose> stepPlan(const PlanState& state, const Pose& vh, double dt, const PlannerParams& params);

struct WorldSnapshot {
    const Environment* environment = nullptr;
    Pose user;
    Pose vh;
    std::span<const PedestrianState> pedestrians;
    PlanState state;
};

struct PlanningOutcome {
    PlanState state;
    bool conflictDetected = false;
    bool planned = false;                 // candidates were generated and scored
    std::optional<CandidatePlan> decision;
    std::size_t candidateCount = 0;
};

struct PlannerConfig {
    ProxemicsParams proxemics;
    AvoidanceParams avoidance;
    ComfortCoefficients comfort;
    PlannerParams planner;
    bool parallelScoring = false;
};

/// Forecasts for every anticipated pedestrian, each over the time it needs
/// to leave the tracking region.
std::vector<PredictedTrajectory> forecastAnticipated(const Segment& dyad, std::span<const PedestrianState> pedestrians,
                                                     const PlannerConfig& config);

/// Runs the conflict check and, when needed, the full generate / score /
/// decide cycle. A stable VH whose best option is to hold stays stable; an
/// adjusting VH keeps its plan unless the target itself is now conflicted.
PlanningOutcome planIfNeeded(const WorldSnapshot& world, const PlannerConfig& config);

}  // namespace harmony
