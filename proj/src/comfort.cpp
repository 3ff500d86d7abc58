#include "harmony/comfort.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace harmony {

void ComfortCoefficients::validate() const
{
    if (!(a < 0.0) || !(b > 1.0)) {
        throw std::invalid_argument("comfort coefficients need a < 0 and b > 1");
    }
}

double comfortAtDistance(double meters, const ComfortCoefficients& coeffs)
{
    if (meters <= 0.0) {
        return 0.0;
    }
    return std::clamp(coeffs.a / (meters * 1000.0) + coeffs.b, 0.0, 1.0);
}

double distanceComfort(const Segment& dyad, std::span<const Vec2> pedestrianPositions,
                       const ComfortCoefficients& coeffs)
{
    double worst = 1.0;
    for (const Vec2 p : pedestrianPositions) {
        worst = std::min(worst, comfortAtDistance(distancePointSegment(p, dyad), coeffs));
    }
    return worst;
}

double outgroupComfort(Vec2 candidate, Vec2 user, std::span<const PredictedTrajectory> trajectories,
                       const ComfortCoefficients& coeffs)
{
    // comfort is monotone in distance, so the minimum over time and
    // pedestrians is the comfort at the closest sample
    const Segment dyad{user, candidate};
    const double floor = coeffs.zeroDistance();
    double closest = std::numeric_limits<double>::infinity();
    for (const auto& traj : trajectories) {
        for (const auto& s : traj.samples) {
            closest = std::min(closest, distancePointSegment(s.position, dyad));
        }
        if (closest <= floor) {
            return 0.0;
        }
    }
    return trajectories.empty() ? 1.0 : comfortAtDistance(closest, coeffs);
}

double ingroupComfort(Vec2 candidate, const Pose& user, const SpatialContext& context,
                      const ProxemicsParams& params)
{
    double best = 0.0;
    for (const auto type : feasibleArrangements(user, candidate, params)) {
        best = std::max(best, contextPreference(context, type));
    }
    return best;
}

double ingroupComfort(Vec2 candidate, const Pose& user, Vec2 currentVh, const Environment& env,
                      std::span<const PedestrianState> pedestrians, const ProxemicsParams& params)
{
    const auto context = classifySpatialContext(env, {user.position, currentVh}, pedestrians, params);
    return ingroupComfort(candidate, user, context, params);
}

}  // namespace harmony
