#include "harmony/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace harmony {

const char* toString(AvoidanceCondition condition)
{
    return condition == AvoidanceCondition::Proposed ? "proposed" : "none";
}

const char* toString(ConflictKind kind)
{
    return kind == ConflictKind::Social ? "social" : "physicality";
}

void ScenarioConfig::validate() const
{
    if (environment != "square12" && environment != "square20" && environment != "passage" &&
        environment != "custom") {
        throw ConfigError("environment", "unknown environment '" + environment + "'");
    }
    if (environment == "custom") {
        if (!(customWidth > 0.0)) throw ConfigError("environment.width", "must be > 0");
        if (!(customHeight > 0.0)) throw ConfigError("environment.height", "must be > 0");
        Environment box;
        box.width = customWidth;
        box.height = customHeight;
        for (const auto& w : customWalls) {
            if (!box.contains(w.a) || !box.contains(w.b)) {
                throw ConfigError("environment.walls", "wall endpoints must lie inside the bounds");
            }
        }
    }
    if (!(density >= 0.0)) throw ConfigError("density", "must be >= 0");
    if (!(speedMin > 0.0 && speedMin <= speedMax && speedMax <= 3.0)) {
        throw ConfigError("speed", "range must satisfy 0 < min <= max <= 3");
    }
    if (!(duration > 0.0)) throw ConfigError("duration", "must be > 0");
    if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
    if (!(interpersonalDistance > 0.0)) throw ConfigError("interpersonal_distance", "must be > 0");
    if (!(bodyRadius > 0.0)) throw ConfigError("body_radius", "must be > 0");
    if (!(spawnExclusion >= 0.0)) throw ConfigError("spawn_exclusion", "must be >= 0");
    if (!(spawnSpacing >= 0.0)) throw ConfigError("spawn_spacing", "must be >= 0");
    if (!(goalTolerance > 0.0)) throw ConfigError("goal_tolerance", "must be > 0");
    if (!(userTurnRateDeg > 0.0)) throw ConfigError("user_turn_rate_deg", "must be > 0");

    const auto nested = [](const char* prefix, auto&& check) {
        try {
            check();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(prefix, e.what());
        }
    };
    nested("proxemics", [&] { proxemics.validate(); });
    nested("avoidance", [&] { avoidance.validate(); });
    nested("comfort", [&] { comfort.validate(); });
    nested("planner", [&] { planner.validate(); });
}

Environment ScenarioConfig::buildEnvironment() const
{
    if (environment == "square12") return Environment::openSquare(12.0);
    if (environment == "square20") return Environment::openSquare(20.0);
    if (environment == "passage") return Environment::narrowPassage(3.0, 20.0);
    Environment env;
    env.name = "custom";
    env.kind = EnvironmentKind::Custom;
    env.width = customWidth;
    env.height = customHeight;
    env.walls = customWalls;
    env.bottomGoals = goalBoxesAlong(customWidth, 0.0, 0.5);
    env.topGoals = goalBoxesAlong(customWidth, customHeight - 0.5, customHeight);
    return env;
}

std::size_t ScenarioConfig::pedestrianCount() const
{
    return static_cast<std::size_t>(std::llround(density * buildEnvironment().area()));
}

PlannerConfig ScenarioConfig::plannerConfig() const
{
    return PlannerConfig{proxemics, avoidance, comfort, planner, false};
}

Vec2 drawGoal(const Environment& env, bool top, RandomStream& rng)
{
    const auto& boxes = top ? env.topGoals : env.bottomGoals;
    const Rect& box = boxes[rng.index(boxes.size())];
    return {rng.uniform(box.min.x, box.max.x), rng.uniform(box.min.y, box.max.y)};
}

namespace {

constexpr double kBoundaryMargin = 0.1;

Vec2 keepInside(const Environment& env, Vec2 p)
{
    return {std::clamp(p.x, kBoundaryMargin, env.width - kBoundaryMargin),
            std::clamp(p.y, kBoundaryMargin, env.height - kBoundaryMargin)};
}

}  // namespace

PedestrianState stepPedestrian(const PedestrianState& ped, Vec2 user, double dt, const Environment& env,
                               const ScenarioConfig& config, RandomStream& rng)
{
    PedestrianState next = ped;
    const double speed = ped.preferredSpeed;
    double travel = speed * dt;

    if (distance(next.position, next.goal) <= config.goalTolerance) {
        next.goalOnTop = !next.goalOnTop;
        next.goal = drawGoal(env, next.goalOnTop, rng);
        next.phase = AvoidancePhase::Direct;
    }

    if (next.phase == AvoidancePhase::Direct) {
        const Vec2 toGoal = next.goal - next.position;
        if (toGoal.squaredNorm() == 0.0) {
            next.velocity = {};
            return next;
        }
        const Vec2 dir = toGoal / toGoal.norm();
        next.velocity = dir * speed;
        const auto dmin = minApproachDistance(next, user);
        if (distance(next.position, user) <= config.avoidance.startAvoidance && dmin &&
            *dmin < config.avoidance.minAvoidance) {
            const AvoidanceGeometry g = avoidanceGeometry(next, user, config.avoidance);
            next.phase = AvoidancePhase::Avoiding;
            next.waypoint = keepInside(env, g.waypoint());
            next.resumeDirection = dir;
        }
    }

    if (next.phase == AvoidancePhase::Avoiding) {
        const Vec2 toWaypoint = next.waypoint - next.position;
        const double gap = toWaypoint.norm();
        if (gap > travel) {
            next.velocity = toWaypoint * (speed / gap);
            next.position = keepInside(env, next.position + toWaypoint * (travel / gap));
            return next;
        }
        next.position = next.waypoint;
        travel -= gap;
        next.phase = AvoidancePhase::Returning;
    }

    if (next.phase == AvoidancePhase::Returning) {
        next.velocity = next.resumeDirection * speed;
        next.position = keepInside(env, next.position + next.resumeDirection * travel);
        const Vec2 away = next.position - user;
        if (away.norm() >= config.avoidance.startAvoidance && dot(away, next.resumeDirection) > 0.0) {
            next.phase = AvoidancePhase::Direct;
        }
        return next;
    }

    next.position = keepInside(env, next.position + next.velocity * dt);
    return next;
}

Pose stepUser(const Pose& user, const Pose& vh, double dt, double maxTurnRateDeg)
{
    const Vec2 toVh = vh.position - user.position;
    if (dt <= 0.0 || toVh.squaredNorm() == 0.0) {
        return user;
    }
    const double turn = wrapToPi(bearing(toVh) - user.orientation);
    const double maxTurn = deg2rad(maxTurnRateDeg) * dt;
    if (std::abs(turn) <= maxTurn) {
        return Pose(user.position, bearing(toVh));
    }
    return Pose(user.position, user.orientation + std::copysign(maxTurn, turn));
}

SpawnResult spawnFlow(const ScenarioConfig& config, const Environment& env, const Segment& dyad)
{
    const std::size_t n = config.pedestrianCount();
    SpawnResult out;
    out.pedestrians.reserve(n);
    out.streams.reserve(n);

    constexpr int kStrictTries = 200;
    constexpr int kRelaxedTries = 2000;
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream rng = RandomStream::forAgent(config.seed, i);
        PedestrianState ped;
        ped.id = static_cast<std::uint32_t>(i);

        const auto drawPosition = [&] {
            return Vec2{rng.uniform(kBoundaryMargin, env.width - kBoundaryMargin),
                        rng.uniform(kBoundaryMargin, env.height - kBoundaryMargin)};
        };
        const auto clearOfDyad = [&](Vec2 p) { return distancePointSegment(p, dyad) >= config.spawnExclusion; };
        const auto spaced = [&](Vec2 p) {
            return std::all_of(out.pedestrians.begin(), out.pedestrians.end(), [&](const PedestrianState& o) {
                return distance(o.position, p) >= config.spawnSpacing;
            });
        };

        // spacing is relaxed first, then the dyad exclusion; spawning never fails
        Vec2 p = drawPosition();
        int tries = 0;
        while (tries < kStrictTries && !(clearOfDyad(p) && spaced(p))) {
            p = drawPosition();
            ++tries;
        }
        while (tries < kStrictTries + kRelaxedTries && !clearOfDyad(p)) {
            p = drawPosition();
            ++tries;
        }
        ped.position = p;
        ped.goalOnTop = rng.uniform() < 0.5;
        ped.goal = drawGoal(env, ped.goalOnTop, rng);
        ped.preferredSpeed = rng.uniform(config.speedMin, config.speedMax);
        const Vec2 toGoal = ped.goal - ped.position;
        if (toGoal.squaredNorm() > 0.0) {
            ped.velocity = toGoal * (ped.preferredSpeed / toGoal.norm());
        }
        out.pedestrians.push_back(ped);
        out.streams.push_back(rng);
    }
    return out;
}

ContactState measureContacts(std::span<const PedestrianState> pedestrians, const Segment& dyad, Vec2 vh,
                             double territoryRadius, double bodyRadius)
{
    ContactState s;
    s.inTerritory.reserve(pedestrians.size());
    s.inBody.reserve(pedestrians.size());
    for (const auto& p : pedestrians) {
        s.inTerritory.push_back(distancePointSegment(p.position, dyad) < territoryRadius);
        s.inBody.push_back(distance(p.position, vh) < bodyRadius);
    }
    return s;
}

std::vector<ConflictEvent> detectEvents(const ContactState& previous, const ContactState& current,
                                        std::span<const PedestrianState> pedestrians, double time)
{
    std::vector<ConflictEvent> events;
    for (std::size_t i = 0; i < pedestrians.size(); ++i) {
        const bool wasIn = i < previous.inTerritory.size() && previous.inTerritory[i];
        const bool wasTouching = i < previous.inBody.size() && previous.inBody[i];
        if (current.inTerritory[i] && !wasIn) {
            events.push_back({ConflictKind::Social, time, pedestrians[i].id});
        }
        if (current.inBody[i] && !wasTouching) {
            events.push_back({ConflictKind::Physicality, time, pedestrians[i].id});
        }
    }
    return events;
}

std::pair<Pose, Pose> initialDyad(const Environment& env, double interpersonalDistance)
{
    const Vec2 center = env.center();
    const double facing = env.width >= env.height ? 0.0 : kPi / 2.0;
    const Pose user(center, facing);
    const Pose vh(center + heading(facing) * interpersonalDistance, facing + kPi);
    return {user, vh};
}

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config))
{
    config_.validate();
    plannerConfig_ = config_.plannerConfig();
    env_ = config_.buildEnvironment();
    std::tie(user_, vh_) = initialDyad(env_, config_.interpersonalDistance);
    auto spawned = spawnFlow(config_, env_, {user_.position, vh_.position});
    peds_ = std::move(spawned.pedestrians);
    streams_ = std::move(spawned.streams);
    contacts_ = measureContacts(peds_, {user_.position, vh_.position}, vh_.position,
                                config_.planner.territoryRadius, config_.bodyRadius);
    totalTicks_ = static_cast<std::uint64_t>(std::llround(config_.duration / config_.dt));
    replanEvery_ = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                                                  std::llround(config_.planner.replanInterval / config_.dt)));
    metrics_.duration = static_cast<double>(totalTicks_) * config_.dt;
}

void Simulation::setTrace(std::ostream* out)
{
    trace_ = out;
    if (trace_) {
        writeTraceHeader();
    }
}

std::vector<ConflictEvent> Simulation::step()
{
    const double dt = config_.dt;

    for (std::size_t i = 0; i < peds_.size(); ++i) {
        peds_[i] = stepPedestrian(peds_[i], user_.position, dt, env_, config_, streams_[i]);
    }

    const PlanPhase phaseAtTickStart = plan_.phase;
    std::optional<PlanningOutcome> outcome;
    if (config_.condition == AvoidanceCondition::Proposed && tick_ % replanEvery_ == 0) {
        outcome = planIfNeeded(WorldSnapshot{&env_, user_, vh_, peds_, plan_}, plannerConfig_);
        plan_ = outcome->state;
        if (outcome->planned && outcome->decision) {
            ++metrics_.planningEvents;
            metrics_.ingroupAtDecisionsSum += outcome->decision->ingroup;
        }
    }

    if (plan_.phase == PlanPhase::Stable) {
        ++stableTicks_;
    } else {
        ++adjustingTicks_;
    }
    metrics_.stableTime = static_cast<double>(stableTicks_) * dt;
    metrics_.adjustingTime = static_cast<double>(adjustingTicks_) * dt;
    std::tie(plan_, vh_) = stepPlan(plan_, vh_, dt, config_.planner);
    user_ = stepUser(user_, vh_, dt, config_.userTurnRateDeg);

    ++tick_;
    const Segment dyad{user_.position, vh_.position};
    ContactState now = measureContacts(peds_, dyad, vh_.position, config_.planner.territoryRadius,
                                       config_.bodyRadius);
    auto events = detectEvents(contacts_, now, peds_, time());
    contacts_ = std::move(now);
    for (const auto& e : events) {
        if (e.kind == ConflictKind::Social) {
            ++metrics_.socialConflicts;
        } else {
            ++metrics_.physicalityConflicts;
        }
        metrics_.events.push_back(e);
    }
    metrics_.stablePercentage = static_cast<double>(stableTicks_) / static_cast<double>(stableTicks_ + adjustingTicks_);

    if (trace_) {
        writeTraceTick(events, outcome, phaseAtTickStart);
    }
    return events;
}

void Simulation::run()
{
    while (!finished()) {
        step();
    }
    metrics_.stablePercentage =
        totalTicks_ == 0 ? 1.0 : static_cast<double>(stableTicks_) / static_cast<double>(totalTicks_);
}

namespace {

void appendNumber(std::string& out, double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    // avoid "-0.0000"
    if (std::string_view(buf) == "-0.0000") {
        out += "0.0000";
    } else {
        out += buf;
    }
}

void appendPose(std::string& out, const Pose& p)
{
    out += '[';
    appendNumber(out, p.position.x);
    out += ',';
    appendNumber(out, p.position.y);
    out += ',';
    appendNumber(out, p.orientation);
    out += ']';
}

}  // namespace

void Simulation::writeTraceHeader()
{
    std::string line = "{\"schema\":\"";
    line += kTraceSchema;
    line += "\",\"environment\":\"" + config_.environment + "\",\"condition\":\"";
    line += toString(config_.condition);
    line += "\",\"seed\":" + std::to_string(config_.seed);
    line += ",\"dt\":";
    appendNumber(line, config_.dt);
    line += ",\"ticks\":" + std::to_string(totalTicks_);
    line += ",\"pedestrians\":" + std::to_string(peds_.size()) + "}\n";
    *trace_ << line;
}

void Simulation::writeTraceTick(const std::vector<ConflictEvent>& events, const std::optional<PlanningOutcome>& outcome,
                                PlanPhase phaseBefore)
{
    std::string line = "{\"tick\":" + std::to_string(tick_) + ",\"t\":";
    appendNumber(line, time());
    line += ",\"user\":";
    appendPose(line, user_);
    line += ",\"vh\":";
    appendPose(line, vh_);
    line += ",\"phase\":\"";
    line += toString(plan_.phase);
    line += "\",\"peds\":[";
    for (std::size_t i = 0; i < peds_.size(); ++i) {
        if (i) line += ',';
        line += '[' + std::to_string(peds_[i].id) + ',';
        appendNumber(line, peds_[i].position.x);
        line += ',';
        appendNumber(line, peds_[i].position.y);
        line += ']';
    }
    line += "],\"events\":[";
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (i) line += ',';
        line += "{\"kind\":\"";
        line += toString(events[i].kind);
        line += "\",\"ped\":" + std::to_string(events[i].pedestrianId) + '}';
    }
    line += ']';
    if (outcome && outcome->planned && outcome->decision) {
        line += ",\"plan\":{\"from\":\"";
        line += toString(phaseBefore);
        line += "\",\"to\":\"";
        line += toString(outcome->state.phase);
        line += "\",\"target\":";
        appendPose(line, Pose(outcome->decision->position, outcome->decision->orientation));
        line += ",\"utility\":";
        appendNumber(line, outcome->decision->utility);
        line += ",\"ingroup\":";
        appendNumber(line, outcome->decision->ingroup);
        line += ",\"outgroup\":";
        appendNumber(line, outcome->decision->outgroup);
        line += '}';
    }
    line += "}\n";
    *trace_ << line;
}

TrialMetrics runTrial(const ScenarioConfig& config, std::ostream* trace)
{
    Simulation sim(config);
    sim.setTrace(trace);
    sim.run();
    return sim.metrics();
}

std::optional<double> reductionRatio(double noneCount, double avoidCount)
{
    if (noneCount <= 0.0) {
        return std::nullopt;
    }
    return (noneCount - avoidCount) / noneCount;
}

}  // namespace harmony
