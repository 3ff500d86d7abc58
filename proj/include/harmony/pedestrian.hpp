#pragma once

#include "harmony/geometry.hpp"

#include <cstdint>

namespace harmony {

/// Where a non-user is in the three-leg user avoidance manoeuvre.
enum class AvoidancePhase {
    Direct,    ///< walking straight toward the goal
    Avoiding,  ///< walking toward a side waypoint next to the user
    Returning, ///< walking on in the direction held before the detour
};

const char* toString(AvoidancePhase phase);

struct PedestrianState {
    std::uint32_t id = 0;
    Vec2 position;
    Vec2 velocity;
    Vec2 goal;
    double preferredSpeed = 1.2;
    AvoidancePhase phase = AvoidancePhase::Direct;
    Vec2 waypoint;          // valid while Avoiding
    Vec2 resumeDirection;   // unit; valid while Avoiding or Returning
    bool goalOnTop = true;  // side of the current goal
};

}  // namespace harmony
