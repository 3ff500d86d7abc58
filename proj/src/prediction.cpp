#include "harmony/prediction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace harmony {

const char* toString(AvoidancePhase phase)
{
    switch (phase) {
    case AvoidancePhase::Direct: return "direct";
    case AvoidancePhase::Avoiding: return "avoiding";
    case AvoidancePhase::Returning: return "returning";
    }
    return "?";
}

void AvoidanceParams::validate() const
{
    if (!(minAvoidance > 0.0)) {
        throw std::invalid_argument("min_avoidance must be > 0");
    }
    if (!(minAvoidance <= startAvoidance)) {
        throw std::invalid_argument("min_avoidance must not exceed start_avoidance");
    }
    if (!(startAvoidance <= anticipate)) {
        throw std::invalid_argument("start_avoidance must not exceed the tracking distance");
    }
}

Vec2 linearExtrapolate(const PedestrianState& ped, double t)
{
    return ped.position + ped.velocity * t;
}

std::optional<double> minApproachDistance(const PedestrianState& ped, Vec2 user)
{
    const double v2 = ped.velocity.squaredNorm();
    if (v2 == 0.0) {
        return std::nullopt;
    }
    const Vec2 w = user - ped.position;
    const double t = std::max(0.0, dot(w, ped.velocity) / v2);
    return distance(linearExtrapolate(ped, t), user);
}

AvoidanceGeometry avoidanceGeometry(const PedestrianState& ped, Vec2 user, const AvoidanceParams& params)
{
    if (params.minAvoidance > params.startAvoidance) {
        throw std::invalid_argument("min_avoidance exceeds start_avoidance; detour angle undefined");
    }
    const Vec2 toUser = user - ped.position;
    const double range = toUser.norm();
    if (range == 0.0) {
        throw std::invalid_argument("pedestrian stands on the user position");
    }
    const Vec2 u = toUser / range;

    AvoidanceGeometry g;
    if (params.minAvoidance < range) {
        g.deviation = std::asin(params.minAvoidance / range);
        g.detourLength = range / std::cos(g.deviation);
    } else {
        // on (or inside) the minimum circle: the tangent is perpendicular and
        // a leg of one range length brings the walker abeam-safe
        g.deviation = kPi / 2.0;
        g.detourLength = std::max(range, params.minAvoidance);
    }
    g.leftDirection = rotated(u, g.deviation);
    g.rightDirection = rotated(u, -g.deviation);
    g.leftWaypoint = ped.position + g.leftDirection * g.detourLength;
    g.rightWaypoint = ped.position + g.rightDirection * g.detourLength;

    const Vec2 current = ped.velocity.squaredNorm() > 0.0 ? ped.velocity : u;
    const double turnLeft = angleBetween(current, g.leftDirection);
    const double turnRight = angleBetween(current, g.rightDirection);
    g.side = turnLeft < turnRight ? AvoidanceSide::Left : AvoidanceSide::Right;
    return g;
}

namespace {

struct Leg {
    Vec2 start;
    Vec2 direction;  // unit
    double length = std::numeric_limits<double>::infinity();
};

Vec2 positionAlong(const std::vector<Leg>& legs, double arc)
{
    for (const auto& leg : legs) {
        if (arc <= leg.length) {
            return leg.start + leg.direction * arc;
        }
        arc -= leg.length;
    }
    const auto& last = legs.back();
    return last.start + last.direction * (last.length + arc);
}

// smallest t >= 0 with |w + v t| = r, assuming the ray gets that close
double timeToRange(Vec2 w, Vec2 v, double r)
{
    const double a = v.squaredNorm();
    const double b = 2.0 * dot(w, v);
    const double c = w.squaredNorm() - r * r;
    if (c <= 0.0) {
        return 0.0;
    }
    const double disc = std::max(0.0, b * b - 4.0 * a * c);
    return std::max(0.0, (-b - std::sqrt(disc)) / (2.0 * a));
}

std::vector<Leg> plannedLegs(const PedestrianState& ped, Vec2 user, const AvoidanceParams& params)
{
    const double speed = ped.velocity.norm();
    std::vector<Leg> legs;
    switch (ped.phase) {
    case AvoidancePhase::Avoiding: {
        const Vec2 toWaypoint = ped.waypoint - ped.position;
        const double len = toWaypoint.norm();
        if (len > 0.0) {
            legs.push_back({ped.position, toWaypoint / len, len});
        }
        legs.push_back({ped.waypoint, ped.resumeDirection});
        return legs;
    }
    case AvoidancePhase::Returning:
        legs.push_back({ped.position, ped.resumeDirection});
        return legs;
    case AvoidancePhase::Direct:
        break;
    }

    const Vec2 dir = ped.velocity / speed;
    const auto dmin = minApproachDistance(ped, user);
    if (!dmin || *dmin >= params.minAvoidance) {
        legs.push_back({ped.position, dir});
        return legs;
    }

    const double t0 = timeToRange(ped.position - user, ped.velocity, params.startAvoidance);
    PedestrianState trigger = ped;
    trigger.position = linearExtrapolate(ped, t0);
    const AvoidanceGeometry g = avoidanceGeometry(trigger, user, params);
    const Vec2 detourDir = g.side == AvoidanceSide::Left ? g.leftDirection : g.rightDirection;

    if (t0 > 0.0) {
        legs.push_back({ped.position, dir, speed * t0});
    }
    legs.push_back({trigger.position, detourDir, g.detourLength});
    legs.push_back({g.waypoint(), dir});
    return legs;
}

}  // namespace

PredictedTrajectory predictTrajectory(const PedestrianState& ped, Vec2 user, double horizon, double dt,
                                      const AvoidanceParams& params)
{
    PredictedTrajectory out;
    out.pedestrianId = ped.id;
    const auto count = static_cast<std::size_t>(std::floor(horizon / dt + 1e-9)) + 1;
    out.samples.reserve(count);

    const double speed = ped.velocity.norm();
    if (speed == 0.0) {
        for (std::size_t k = 0; k < count; ++k) {
            out.samples.push_back({static_cast<double>(k) * dt, ped.position});
        }
    } else {
        const auto legs = plannedLegs(ped, user, params);
        for (std::size_t k = 0; k < count; ++k) {
            const double t = static_cast<double>(k) * dt;
            out.samples.push_back({t, positionAlong(legs, speed * t)});
        }
    }

    out.minUserDistance = std::numeric_limits<double>::infinity();
    for (const auto& s : out.samples) {
        out.minUserDistance = std::min(out.minUserDistance, distance(s.position, user));
    }
    return out;
}

double exitHorizon(const PedestrianState& ped, Vec2 center, double radius, double cap)
{
    const double a = ped.velocity.squaredNorm();
    if (a == 0.0) {
        return cap;
    }
    const Vec2 w = ped.position - center;
    const double b = 2.0 * dot(w, ped.velocity);
    const double c = w.squaredNorm() - radius * radius;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return 0.0;
    }
    const double tExit = (-b + std::sqrt(disc)) / (2.0 * a);
    return std::clamp(tExit, 0.0, cap);
}

std::vector<PedestrianState> anticipatedPedestrians(std::span<const PedestrianState> all, const Segment& dyad,
                                                    const AvoidanceParams& params)
{
    std::vector<PedestrianState> out;
    for (const auto& p : all) {
        if (distancePointSegment(p.position, dyad) <= params.anticipate) {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace harmony
