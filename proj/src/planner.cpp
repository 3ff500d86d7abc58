#include "harmony/planner.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace harmony {

const char* toString(PlanPhase phase)
{
    return phase == PlanPhase::Stable ? "stable" : "adjusting";
}

void PlannerParams::validate() const
{
    if (!(c >= 0.0)) throw std::invalid_argument("planner.c must be >= 0");
    if (!(d >= 0.0)) throw std::invalid_argument("planner.d must be >= 0");
    if (!(territoryRadius > 0.0)) throw std::invalid_argument("planner.territory_radius must be > 0");
    if (!(candidateMinRadius > 0.0 && candidateMinRadius <= candidateMaxRadius)) {
        throw std::invalid_argument("planner candidate radii must satisfy 0 < min <= max");
    }
    if (!(candidateRadiusStep > 0.0)) throw std::invalid_argument("planner.candidate_radius_step must be > 0");
    if (!(candidateBearingStepDeg > 0.0 && candidateBearingStepDeg <= 360.0)) {
        throw std::invalid_argument("planner.candidate_bearing_step_deg must be in (0, 360]");
    }
    if (!(wallClearance >= 0.0)) throw std::invalid_argument("planner.wall_clearance must be >= 0");
    if (!(maxSpeed > 0.0)) throw std::invalid_argument("planner.max_speed must be > 0");
    if (!(maxTurnRateDeg > 0.0)) throw std::invalid_argument("planner.max_turn_rate_deg must be > 0");
    if (!(replanInterval > 0.0)) throw std::invalid_argument("planner.replan_interval must be > 0");
    if (!(predictionDt > 0.0)) throw std::invalid_argument("planner.prediction_dt must be > 0");
    if (!(horizonCap > 0.0)) throw std::invalid_argument("planner.horizon_cap must be > 0");
    if (refineSeeds < 0) throw std::invalid_argument("planner.refine_seeds must be >= 0");
    if (!(refineMinStep > 0.0)) throw std::invalid_argument("planner.refine_min_step must be > 0");
    if (refineMaxSteps < 0) throw std::invalid_argument("planner.refine_max_steps must be >= 0");
}

ConflictCheck detectPotentialConflict(const Segment& dyad, std::span<const PredictedTrajectory> trajectories,
                                      double radius)
{
    ConflictCheck out;
    for (const auto& traj : trajectories) {
        const bool hit = std::any_of(traj.samples.begin(), traj.samples.end(), [&](const TrajectorySample& s) {
            return distancePointSegment(s.position, dyad) < radius;
        });
        if (hit) {
            out.conflict = true;
            out.pedestrianIds.push_back(traj.pedestrianId);
        }
    }
    return out;
}

std::vector<Vec2> generateCandidates(const Pose& user, Vec2 currentVh, const Environment& env,
                                     const PlannerParams& params)
{
    std::vector<Vec2> out{currentVh};
    const int radii = static_cast<int>(std::floor(
                          (params.candidateMaxRadius - params.candidateMinRadius) / params.candidateRadiusStep + 1e-9)) +
                      1;
    const int bearings = static_cast<int>(std::floor(360.0 / params.candidateBearingStepDeg + 1e-9));
    out.reserve(static_cast<std::size_t>(radii * bearings) + 1);
    for (int i = 0; i < radii; ++i) {
        const double r = params.candidateMinRadius + i * params.candidateRadiusStep;
        for (int j = 0; j < bearings; ++j) {
            const Vec2 p = user.position + heading(deg2rad(j * params.candidateBearingStepDeg)) * r;
            if (!env.contains(p)) {
                continue;
            }
            if (nearestWallDistance(env, p) < params.wallClearance) {
                continue;
            }
            out.push_back(p);
        }
    }
    return out;
}

double utility(double ingroup, double outgroup, double moveDistance, const PlannerParams& params)
{
    return (ingroup + params.c * outgroup) / (1.0 + moveDistance * params.d);
}

CandidatePlan scoreCandidate(Vec2 position, const ScoringInput& input)
{
    CandidatePlan plan;
    plan.position = position;
    plan.moveDistance = distance(position, input.currentVh);

    if (isFformationAvailable(input.user, position, input.proxemics)) {
        const double alpha = userAlphaDeg(input.user, position);
        // strict > keeps the more closed arrangement on ties
        for (const auto type : feasibleArrangementsForAlpha(alpha)) {
            const double p = contextPreference(input.context, type);
            if (p > plan.ingroup) {
                plan.ingroup = p;
                plan.arrangement = type;
            }
        }
        plan.orientation = vhOrientationFor(input.user, position, betaForArrangement(alpha, *plan.arrangement));
    } else if (distance(position, input.user.position) > 0.0) {
        plan.orientation = bearing(input.user.position - position);
    }

    plan.outgroup = outgroupComfort(position, input.user.position, input.trajectories, input.comfort);
    plan.utility = utility(plan.ingroup, plan.outgroup, plan.moveDistance, input.planner);
    return plan;
}

std::vector<CandidatePlan> scoreCandidatesSerial(std::span<const Vec2> candidates, const ScoringInput& input)
{
    std::vector<CandidatePlan> out;
    out.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        out.push_back(scoreCandidate(candidates[i], input));
        out.back().index = i;
    }
    return out;
}

std::vector<CandidatePlan> scoreCandidatesParallel(std::span<const Vec2> candidates, const ScoringInput& input)
{
    std::vector<CandidatePlan> out(candidates.size());
    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = scoreCandidate(candidates[k], input);
        out[k].index = k;
    }
    return out;
}

namespace {

bool admissible(Vec2 p, const ScoringInput& input, const Environment& env)
{
    const double r = distance(p, input.user.position);
    const auto& k = input.planner;
    return r >= k.candidateMinRadius - 1e-12 && r <= k.candidateMaxRadius + 1e-12 && env.contains(p) &&
           nearestWallDistance(env, p) >= k.wallClearance;
}

// strict improvement, or equal utility for a shorter move
bool better(const CandidatePlan& a, const CandidatePlan& b)
{
    return a.utility > b.utility || (a.utility == b.utility && a.moveDistance < b.moveDistance);
}

}  // namespace

std::vector<CandidatePlan> evaluateCandidates(std::span<const Vec2> grid, const ScoringInput& input,
                                              const Environment& env, bool parallel)
{
    auto out = parallel ? scoreCandidatesParallel(grid, input) : scoreCandidatesSerial(grid, input);
    const auto& k = input.planner;
    if (k.refineSeeds == 0 || out.empty()) {
        return out;
    }

    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (out[a].utility != out[b].utility) return out[a].utility > out[b].utility;
        return out[a].moveDistance < out[b].moveDistance;
    });
    order.resize(std::min(order.size(), static_cast<std::size_t>(k.refineSeeds)));

    for (const std::size_t seed : order) {
        CandidatePlan at = out[seed];
        double step = 0.5 * k.candidateRadiusStep;
        for (int n = 0; n < k.refineMaxSteps && step >= k.refineMinStep; ++n) {
            std::optional<CandidatePlan> best;
            for (int dir = 0; dir < 8; ++dir) {
                const Vec2 p = at.position + heading(dir * kPi / 4.0) * step;
                if (!admissible(p, input, env)) continue;
                CandidatePlan c = scoreCandidate(p, input);
                if (better(c, best ? *best : at)) best = c;
            }
            if (best) {
                best->index = out.size();
                out.push_back(*best);
                at = *best;
            } else {
                step *= 0.5;
            }
        }
    }
    return out;
}

const CandidatePlan& decide(std::span<const CandidatePlan> candidates)
{
    if (candidates.empty()) {
        throw PlanningImpossible("no candidate positions to choose from");
    }
    const CandidatePlan* best = &candidates.front();
    for (const auto& c : candidates.subspan(1)) {
        if (c.utility > best->utility) {
            best = &c;
        } else if (c.utility == best->utility) {
            if (c.moveDistance < best->moveDistance ||
                (c.moveDistance == best->moveDistance && c.index < best->index)) {
                best = &c;
            }
        }
    }
    return *best;
}

std::pair<PlanState, Pose> stepPlan(const PlanState& state, const Pose& vh, double dt, const PlannerParams& params)
{
    PlanState next = state;
    next.timeInPhase += dt;
    if (state.phase == PlanPhase::Stable || !state.plan) {
        return {next, vh};
    }

    const CandidatePlan& target = *state.plan;
    const Vec2 toTarget = target.position - vh.position;
    const double gap = toTarget.norm();
    const double maxStep = params.maxSpeed * dt;
    const Vec2 position = gap <= maxStep ? target.position : vh.position + toTarget * (maxStep / gap);

    const double turn = wrapToPi(target.orientation - vh.orientation);
    const double maxTurn = deg2rad(params.maxTurnRateDeg) * dt;
    const double orientation = std::abs(turn) <= maxTurn ? target.orientation
                                                          : vh.orientation + std::copysign(maxTurn, turn);
    const Pose moved(position, orientation);

    const bool arrived = distance(moved.position, target.position) <= params.arrivalTolerance &&
                         std::abs(wrapToPi(target.orientation - moved.orientation)) <= deg2rad(params.arrivalAngleDeg);
    if (arrived) {
        next.phase = PlanPhase::Stable;
        next.plan.reset();
        next.timeInPhase = 0.0;
    }
    return {next, moved};
}

std::vector<PredictedTrajectory> forecastAnticipated(const Segment& dyad, std::span<const PedestrianState> pedestrians,
                                                     const PlannerConfig& config)
{
    const auto nearby = anticipatedPedestrians(pedestrians, dyad, config.avoidance);
    const double radius = config.avoidance.anticipate + 0.5 * dyad.length();
    std::vector<PredictedTrajectory> out;
    out.reserve(nearby.size());
    for (const auto& ped : nearby) {
        const double horizon = exitHorizon(ped, dyad.midpoint(), radius, config.planner.horizonCap);
        out.push_back(predictTrajectory(ped, dyad.a, horizon, config.planner.predictionDt, config.avoidance));
    }
    return out;
}

PlanningOutcome planIfNeeded(const WorldSnapshot& world, const PlannerConfig& config)
{
    PlanningOutcome out;
    out.state = world.state;

    const Segment current{world.user.position, world.vh.position};
    const auto trajectories = forecastAnticipated(current, world.pedestrians, config);

    if (world.state.phase == PlanPhase::Adjusting && world.state.plan) {
        const Segment target{world.user.position, world.state.plan->position};
        if (!detectPotentialConflict(target, trajectories, config.planner.territoryRadius).conflict) {
            return out;
        }
    } else if (!detectPotentialConflict(current, trajectories, config.planner.territoryRadius).conflict) {
        return out;
    }
    out.conflictDetected = true;

    const auto candidates = generateCandidates(world.user, world.vh.position, *world.environment, config.planner);
    const ScoringInput input{
        world.user,
        world.vh.position,
        classifySpatialContext(*world.environment, current, world.pedestrians, config.proxemics),
        trajectories,
        config.proxemics,
        config.comfort,
        config.planner,
    };
    const auto scored = evaluateCandidates(candidates, input, *world.environment, config.parallelScoring);
    const CandidatePlan& best = decide(scored);
    out.planned = true;
    out.decision = best;
    out.candidateCount = scored.size();

    if (best.index == 0) {
        out.state = PlanState{PlanPhase::Stable, std::nullopt, 0.0};
        if (world.state.phase == PlanPhase::Stable) {
            out.state.timeInPhase = world.state.timeInPhase;
        }
    } else {
        out.state = PlanState{PlanPhase::Adjusting, best, 0.0};
    }
    return out;
}

}  // namespace harmony
