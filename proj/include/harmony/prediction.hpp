#pragma once

#include "harmony/geometry.hpp"
#include "harmony/pedestrian.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace harmony {

struct AvoidanceParams {
    double minAvoidance = 0.67;   // m, closest a non-user lets itself pass the user
    double startAvoidance = 2.0;  // m, range at which the detour begins
    double anticipate = 6.0;      // m, tracking distance around the dyad

    /// Requires 0 < minAvoidance <= startAvoidance <= anticipate.
    void validate() const;
    bool operator==(const AvoidanceParams&) const = default;
};

struct TrajectorySample {
    double t = 0.0;
    Vec2 position;
};

struct PredictedTrajectory {
    std::uint32_t pedestrianId = 0;
    std::vector<TrajectorySample> samples;  // t = 0, dt, 2dt, ...
    double minUserDistance = 0.0;
};

enum class AvoidanceSide { Left, Right };

/// Detour around the user as seen from the point where it starts.
struct AvoidanceGeometry {
    double deviation = 0.0;      // rad, between start->user and start->waypoint
    double detourLength = 0.0;   // m, start -> waypoint
    Vec2 leftDirection;
    Vec2 rightDirection;
    Vec2 leftWaypoint;
    Vec2 rightWaypoint;
    AvoidanceSide side = AvoidanceSide::Right;

    Vec2 waypoint() const { return side == AvoidanceSide::Left ? leftWaypoint : rightWaypoint; }
};

/// Position after `t` seconds of constant-velocity walking.
Vec2 linearExtrapolate(const PedestrianState& ped, double t);

/// Closest distance between the user and the pedestrian's forward ray.
/// std::nullopt for a stationary pedestrian.
std::optional<double> minApproachDistance(const PedestrianState& ped, Vec2 user);

/// Deviation angle is asin(minAvoidance / range) and the detour length is
/// range / cos(deviation), where range is the current distance to the user
/// (startAvoidance at a nominal trigger). Each detour line is tangent to the
/// minAvoidance circle around the user. The side needing the smaller heading
/// change from the current velocity is selected; an exact tie picks right.
/// Throws std::invalid_argument when minAvoidance > startAvoidance.
AvoidanceGeometry avoidanceGeometry(const PedestrianState& ped, Vec2 user, const AvoidanceParams& params);

/// Three-leg forecast (straight, detour to the waypoint, straight again)
/// sampled every `dt` up to `horizon`. Pedestrians already mid-detour continue
/// from their current leg.
PredictedTrajectory predictTrajectory(const PedestrianState& ped, Vec2 user, double horizon, double dt,
                                      const AvoidanceParams& params);

/// Seconds until the pedestrian leaves a disc of `radius` around `center`
/// at its current velocity, capped at `cap`.
double exitHorizon(const PedestrianState& ped, Vec2 center, double radius, double cap);

/// Pedestrians within the tracking distance of the dyad segment (inclusive).
std::vector<PedestrianState> anticipatedPedestrians(std::span<const PedestrianState> all, const Segment& dyad,
                                                    const AvoidanceParams& params);

}  // namespace harmony
