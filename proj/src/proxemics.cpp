#include "harmony/proxemics.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace harmony {

const char* toString(ArrangementType type)
{
    switch (type) {
    case ArrangementType::Closed: return "closed";
    case ArrangementType::LShaped: return "l-shaped";
    case ArrangementType::Open: return "open";
    }
    return "?";
}

const char* toString(Definiteness d)
{
    return d == Definiteness::NearWall ? "near-wall" : "open-space";
}

const char* toString(Crowdedness c)
{
    return c == Crowdedness::Crowded ? "crowded" : "uncrowded";
}

void ProxemicsParams::validate() const
{
    if (!(personalSpaceRadius > 0.0)) {
        throw std::invalid_argument("personal_space_radius must be > 0");
    }
    if (!(formationMin > 0.0 && formationMin < formationMax)) {
        throw std::invalid_argument("formation distance bounds must satisfy 0 < min < max");
    }
    if (!(crowdDensityThreshold >= 0.0)) {
        throw std::invalid_argument("crowd_density_threshold must be >= 0");
    }
    if (!(cSpaceRadius > 0.0)) {
        throw std::invalid_argument("c_space_radius must be > 0");
    }
}

RelativeAngles relativeAngles(const Pose& user, const Pose& vh)
{
    const Vec2 toVh = vh.position - user.position;
    if (toVh.squaredNorm() == 0.0) {
        throw std::invalid_argument("user and VH positions coincide");
    }
    return {rad2deg(angleBetween(user.facing(), toVh)), rad2deg(angleBetween(vh.facing(), -toVh))};
}

double userAlphaDeg(const Pose& user, Vec2 candidate)
{
    return rad2deg(angleBetween(user.facing(), candidate - user.position));
}

bool isFformationAvailable(const Pose& user, Vec2 candidate, const ProxemicsParams& params)
{
    const double dist = distance(user.position, candidate);
    if (dist < params.formationMin || dist > params.formationMax) {
        return false;
    }
    return userAlphaDeg(user, candidate) <= params.maxAlphaDeg;
}

ArrangementType classifyArrangement(double sumDeg)
{
    if (!(sumDeg >= 0.0 && sumDeg <= 180.0)) {
        throw std::invalid_argument("alpha + beta must lie in [0, 180], got " + std::to_string(sumDeg));
    }
    if (sumDeg <= 60.0) {
        return ArrangementType::Closed;
    }
    if (sumDeg < 120.0) {
        return ArrangementType::LShaped;
    }
    return ArrangementType::Open;
}

std::vector<ArrangementType> feasibleArrangementsForAlpha(double alphaDeg)
{
    // alpha + beta sweeps [alpha, alpha + 90]; keep every band it touches
    const double lo = alphaDeg;
    const double hi = alphaDeg + 90.0;
    std::vector<ArrangementType> out;
    if (lo <= 60.0) {
        out.push_back(ArrangementType::Closed);
    }
    if (lo < 120.0 && hi > 60.0) {
        out.push_back(ArrangementType::LShaped);
    }
    if (hi >= 120.0 && lo <= 180.0) {
        out.push_back(ArrangementType::Open);
    }
    return out;
}

std::vector<ArrangementType> feasibleArrangements(const Pose& user, Vec2 candidate,
                                                  const ProxemicsParams& params)
{
    if (!isFformationAvailable(user, candidate, params)) {
        return {};
    }
    return feasibleArrangementsForAlpha(userAlphaDeg(user, candidate));
}

double betaForArrangement(double alphaDeg, ArrangementType type)
{
    double mid = 0.0;
    switch (type) {
    case ArrangementType::Closed: mid = 30.0; break;
    case ArrangementType::LShaped: mid = 90.0; break;
    case ArrangementType::Open: mid = 150.0; break;
    }
    return std::clamp(mid - alphaDeg, 0.0, 90.0);
}

double vhOrientationFor(const Pose& user, Vec2 vhPosition, double betaDeg)
{
    const Vec2 toUser = user.position - vhPosition;
    // side of the user-VH line the user is facing; the VH turns its front the
    // same way so both bodies open onto a shared space
    const double side = cross(vhPosition - user.position, user.facing()) >= 0.0 ? 1.0 : -1.0;
    return bearing(rotated(toUser, -side * deg2rad(betaDeg)));
}

SpatialContext classifySpatialContext(const Environment& env, const Segment& dyad,
                                      std::span<const PedestrianState> pedestrians,
                                      const ProxemicsParams& params)
{
    SpatialContext ctx;
    if (segmentWallClearance(env, dyad) < params.personalSpaceRadius) {
        ctx.definiteness = Definiteness::NearWall;
    }

    const Vec2 center = dyad.midpoint();
    const double r2 = params.cSpaceRadius * params.cSpaceRadius;
    const auto inside = std::count_if(pedestrians.begin(), pedestrians.end(), [&](const PedestrianState& p) {
        return (p.position - center).squaredNorm() <= r2;
    });
    const double area = discAreaInside(env, center, params.cSpaceRadius);
    if (area > 0.0 && static_cast<double>(inside) / area >= params.crowdDensityThreshold) {
        ctx.crowdedness = Crowdedness::Crowded;
    }
    return ctx;
}

double contextPreference(const SpatialContext& context, ArrangementType type)
{
    constexpr double kHigh = 1.0;
    constexpr double kMiddle = 0.6;
    constexpr double kLow = 0.2;
    // rows: closed, l-shaped, open
    static constexpr double kTable[2][2][3] = {
        // open space: uncrowded, crowded
        {{kHigh, kMiddle, kLow}, {kLow, kHigh, kLow}},
        // near wall: uncrowded, crowded
        {{kMiddle, kMiddle, kHigh}, {kLow, kHigh, kMiddle}},
    };
    const int d = context.definiteness == Definiteness::NearWall ? 1 : 0;
    const int c = context.crowdedness == Crowdedness::Crowded ? 1 : 0;
    return kTable[d][c][static_cast<int>(type)];
}

}  // namespace harmony
