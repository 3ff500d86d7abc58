#pragma once

#include "harmony/geometry.hpp"
#include "harmony/pedestrian.hpp"

#include <array>
#include <span>
#include <vector>

namespace harmony {

/// Openness of a dyadic arrangement: vis-a-vis, L-shaped or side-by-side.
enum class ArrangementType { Closed, LShaped, Open };

inline constexpr std::array<ArrangementType, 3> kArrangements = {
    ArrangementType::Closed, ArrangementType::LShaped, ArrangementType::Open};

const char* toString(ArrangementType type);

/// Body-orientation angles of a dyad in degrees. `alpha` belongs to the user,
/// `beta` to the virtual human; each is measured between the body heading and
/// the vector toward the interlocutor.
struct RelativeAngles {
    double alpha = 0.0;
    double beta = 0.0;
};

enum class Definiteness { OpenSpace, NearWall };
enum class Crowdedness { Uncrowded, Crowded };

struct SpatialContext {
    Definiteness definiteness = Definiteness::OpenSpace;
    Crowdedness crowdedness = Crowdedness::Uncrowded;
    bool operator==(const SpatialContext&) const = default;
};

const char* toString(Definiteness d);
const char* toString(Crowdedness c);

struct ProxemicsParams {
    double personalSpaceRadius = 1.2;  // m, also the near-wall threshold
    double formationMin = 0.6;         // m
    double formationMax = 1.5;         // m
    double maxAlphaDeg = 90.0;
    double crowdDensityThreshold = 0.15;  // persons / m^2
    double cSpaceRadius = 6.0;            // m

    /// Throws std::invalid_argument naming the first violated bound.
    void validate() const;
    bool operator==(const ProxemicsParams&) const = default;
};

/// Throws std::invalid_argument when the two positions coincide.
RelativeAngles relativeAngles(const Pose& user, const Pose& vh);

/// Distance band and user-side angle check for an F-formation. The candidate's
/// own orientation is irrelevant: the VH can always turn to keep beta <= 90.
bool isFformationAvailable(const Pose& user, Vec2 candidate, const ProxemicsParams& params);

/// Bands on alpha + beta (degrees). Throws std::invalid_argument outside [0, 180].
ArrangementType classifyArrangement(double sumDeg);
inline ArrangementType classifyArrangement(const RelativeAngles& a)
{
    return classifyArrangement(a.alpha + a.beta);
}

/// Alpha (degrees) the user would have toward a VH standing at `candidate`.
double userAlphaDeg(const Pose& user, Vec2 candidate);

/// Arrangements reachable by choosing beta in [0, 90] with alpha fixed by the
/// candidate position. Empty when no F-formation is available.
std::vector<ArrangementType> feasibleArrangements(const Pose& user, Vec2 candidate,
                                                  const ProxemicsParams& params);

/// Same as above from a precomputed alpha, without the distance check.
std::vector<ArrangementType> feasibleArrangementsForAlpha(double alphaDeg);

/// Beta (degrees) that realizes `type` at the given alpha: the band midpoint
/// clamped to [0, 90]. Requires `type` to be feasible for alpha.
double betaForArrangement(double alphaDeg, ArrangementType type);

/// VH heading that produces `betaDeg` while opening toward the side the user
/// is facing.
double vhOrientationFor(const Pose& user, Vec2 vhPosition, double betaDeg);

SpatialContext classifySpatialContext(const Environment& env, const Segment& dyad,
                                      std::span<const PedestrianState> pedestrians,
                                      const ProxemicsParams& params);

/// Preference weight of an arrangement in a context: 1.0 high, 0.6 middle, 0.2 low.
double contextPreference(const SpatialContext& context, ArrangementType type);

}  // namespace harmony
