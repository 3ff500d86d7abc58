#pragma once

#include "harmony/geometry.hpp"
#include "harmony/pedestrian.hpp"
#include "harmony/planner.hpp"
#include "harmony/rng.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace harmony {

enum class AvoidanceCondition { None, Proposed };

const char* toString(AvoidanceCondition condition);

/// Fully resolved trial description. Defaults reproduce the calibrated
/// setting: 12 x 12 m square, 0.25 persons/m^2, c = 1, d = 0.5.
struct ScenarioConfig {
    std::string environment = "square12";  // square12 | square20 | passage | custom
    double customWidth = 12.0;
    double customHeight = 12.0;
    std::vector<Segment> customWalls;

    double density = 0.25;  // persons / m^2
    double speedMin = 1.0;  // m/s
    double speedMax = 1.5;
    AvoidanceCondition condition = AvoidanceCondition::Proposed;
    double duration = 600.0;  // s
    double dt = 0.1;          // s
    std::uint64_t seed = 1;

    double interpersonalDistance = 1.5;  // m, initial user-VH distance
    double bodyRadius = 0.4;             // m, VH body disc for physicality conflicts
    double spawnExclusion = 2.0;         // m around the dyad
    double spawnSpacing = 0.5;           // m between spawned pedestrians
    double goalTolerance = 0.3;          // m
    double userTurnRateDeg = 90.0;       // deg/s

    ProxemicsParams proxemics;
    AvoidanceParams avoidance;
    ComfortCoefficients comfort;
    PlannerParams planner;

    /// Throws ConfigError naming the offending field.
    void validate() const;
    Environment buildEnvironment() const;
    std::size_t pedestrianCount() const;
    PlannerConfig plannerConfig() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Configuration rejected; `field` is the dotted path of the culprit.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {
    }
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

enum class ConflictKind { Social, Physicality };

const char* toString(ConflictKind kind);

struct ConflictEvent {
    ConflictKind kind = ConflictKind::Social;
    double time = 0.0;
    std::uint32_t pedestrianId = 0;
};

struct TrialMetrics {
    std::size_t socialConflicts = 0;
    std::size_t physicalityConflicts = 0;
    double stableTime = 0.0;
    double adjustingTime = 0.0;
    double duration = 0.0;
    double stablePercentage = 1.0;  // fraction of the trial
    std::size_t planningEvents = 0;
    double ingroupAtDecisionsSum = 0.0;
    std::vector<ConflictEvent> events;

    double meanIngroupAtDecisions() const
    {
        return planningEvents == 0 ? 0.0 : ingroupAtDecisionsSum / static_cast<double>(planningEvents);
    }
};

/// One pedestrian step of the three-leg avoidance behavior. Pedestrians
/// never see the VH. `rng` is only consumed on goal arrival.
PedestrianState stepPedestrian(const PedestrianState& ped, Vec2 user, double dt, const Environment& env,
                               const ScenarioConfig& config, RandomStream& rng);

/// User stays put and turns toward the VH at the configured rate.
Pose stepUser(const Pose& user, const Pose& vh, double dt, double maxTurnRateDeg);

/// Picks a uniformly random point in a uniformly random goal box on one side.
Vec2 drawGoal(const Environment& env, bool top, RandomStream& rng);

struct SpawnResult {
    std::vector<PedestrianState> pedestrians;
    std::vector<RandomStream> streams;  // one per pedestrian, same order
};

/// Places round(density * area) pedestrians away from the dyad.
SpawnResult spawnFlow(const ScenarioConfig& config, const Environment& env, const Segment& dyad);

/// Per-pedestrian containment flags used for edge-triggered conflict events.
struct ContactState {
    std::vector<bool> inTerritory;
    std::vector<bool> inBody;
};

ContactState measureContacts(std::span<const PedestrianState> pedestrians, const Segment& dyad, Vec2 vh,
                             double territoryRadius, double bodyRadius);

/// Events for every pedestrian that entered the territory or the VH body
/// disc between `previous` and `current`.
std::vector<ConflictEvent> detectEvents(const ContactState& previous, const ContactState& current,
                                        std::span<const PedestrianState> pedestrians, double time);

/// Initial user and VH poses: user in the middle facing along the longer
/// axis (x on ties), VH in front at the interpersonal distance facing back.
std::pair<Pose, Pose> initialDyad(const Environment& env, double interpersonalDistance);

/// Deterministic fixed-step world.
class Simulation {
public:
    explicit Simulation(ScenarioConfig config);

    /// Advances one tick; returns the events raised during it.
    std::vector<ConflictEvent> step();
    bool finished() const { return tick_ >= totalTicks_; }
    void run();

    const ScenarioConfig& config() const { return config_; }
    const Environment& environment() const { return env_; }
    const Pose& user() const { return user_; }
    const Pose& vh() const { return vh_; }
    const PlanState& planState() const { return plan_; }
    const std::vector<PedestrianState>& pedestrians() const { return peds_; }
    const TrialMetrics& metrics() const { return metrics_; }
    std::uint64_t tick() const { return tick_; }
    double time() const { return static_cast<double>(tick_) * config_.dt; }

    /// Attach a JSONL trace writer. Must outlive the simulation run.
    void setTrace(std::ostream* out);

private:
    void writeTraceHeader();
    void writeTraceTick(const std::vector<ConflictEvent>& events, const std::optional<PlanningOutcome>& outcome,
                        PlanPhase phaseBefore);

    ScenarioConfig config_;
    PlannerConfig plannerConfig_;
    Environment env_;
    Pose user_;
    Pose vh_;
    PlanState plan_;
    std::vector<PedestrianState> peds_;
    std::vector<RandomStream> streams_;
    ContactState contacts_;
    TrialMetrics metrics_;
    std::uint64_t tick_ = 0;
    std::uint64_t stableTicks_ = 0;
    std::uint64_t adjustingTicks_ = 0;
    std::uint64_t totalTicks_ = 0;
    std::uint64_t replanEvery_ = 1;
    std::ostream* trace_ = nullptr;
};

/// Runs one full trial.
TrialMetrics runTrial(const ScenarioConfig& config, std::ostream* trace = nullptr);

/// (noneCount - avoidCount) / noneCount; nullopt when noneCount is zero.
std::optional<double> reductionRatio(double noneCount, double avoidCount);

inline constexpr const char* kTraceSchema = "harmony-trace/1";

}  // namespace harmony
