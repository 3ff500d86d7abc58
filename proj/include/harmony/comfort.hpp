#pragma once

#include "harmony/geometry.hpp"
#include "harmony/prediction.hpp"
#include "harmony/proxemics.hpp"

#include <span>

namespace harmony {

/// Regression constants of the distance comfort curve a / d + b, d in mm.
struct ComfortCoefficients {
    double a = -1370.25;
    double b = 3.045;

    void validate() const;
    bool operator==(const ComfortCoefficients&) const = default;
    /// Distance (m) below which comfort is 0.
    double zeroDistance() const { return -a / b / 1000.0; }
    /// Distance (m) above which comfort saturates at 1.
    double saturationDistance() const { return a / (1.0 - b) / 1000.0; }
};

/// Comfort from a single pedestrian-to-dyad distance in meters, clamped to [0, 1].
double comfortAtDistance(double meters, const ComfortCoefficients& coeffs);

/// Minimum comfort over pedestrians at one instant. Empty set gives 1.
double distanceComfort(const Segment& dyad, std::span<const Vec2> pedestrianPositions,
                       const ComfortCoefficients& coeffs);

/// Worst distance comfort over the whole forecast window for a VH at
/// `candidate`. Trajectories share a time grid; a pedestrian stops counting
/// once its forecast ends (it has left the c-space).
double outgroupComfort(Vec2 candidate, Vec2 user, std::span<const PredictedTrajectory> trajectories,
                       const ComfortCoefficients& coeffs);

/// Best context preference over the arrangements a VH at `candidate` can
/// form; 0 when no F-formation is available there.
double ingroupComfort(Vec2 candidate, const Pose& user, const SpatialContext& context,
                      const ProxemicsParams& params);

/// Convenience overload that classifies the context from the current dyad.
double ingroupComfort(Vec2 candidate, const Pose& user, Vec2 currentVh, const Environment& env,
                      std::span<const PedestrianState> pedestrians, const ProxemicsParams& params);

}  // namespace harmony
