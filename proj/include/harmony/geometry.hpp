#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace harmony {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Planar vector in meters.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    constexpr double squaredNorm() const { return x * x + y * y; }
    bool isFinite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

/// Unit vector; throws std::invalid_argument on the zero vector.
Vec2 normalized(Vec2 v);
/// Counter-clockwise rotation by `angle` radians.
Vec2 rotated(Vec2 v, double angle);
/// Unit vector pointing along `angle` (radians CCW from +x).
inline Vec2 heading(double angle) { return {std::cos(angle), std::sin(angle)}; }
/// Direction of `v` in [0, 2pi).
double bearing(Vec2 v);

/// Wraps any angle into [0, 2pi).
double normalizeAngle(double angle);
/// Wraps any angle into (-pi, pi].
double wrapToPi(double angle);

/// Position plus body orientation (radians CCW from +x, kept in [0, 2pi)).
struct Pose {
    Vec2 position;
    double orientation = 0.0;

    Pose() = default;
    Pose(Vec2 p, double theta) : position(p), orientation(normalizeAngle(theta)) {}

    Vec2 facing() const { return heading(orientation); }
    bool operator==(const Pose&) const = default;
};

struct Segment {
    Vec2 a;
    Vec2 b;

    Vec2 midpoint() const { return (a + b) * 0.5; }
    double length() const { return distance(a, b); }
    bool operator==(const Segment&) const = default;
};

struct Rect {
    Vec2 min;
    Vec2 max;

    bool contains(Vec2 p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    Vec2 center() const { return (min + max) * 0.5; }
    bool operator==(const Rect&) const = default;
};

/// Euclidean distance from `p` to the closest point of `s`. Degenerate
/// segments (a == b) behave as a point.
double distancePointSegment(Vec2 p, const Segment& s);

/// Closest point of `s` to `p`.
Vec2 closestPointOnSegment(Vec2 p, const Segment& s);

/// Unsigned angle between two non-zero vectors, in [0, pi].
/// Throws std::invalid_argument if either vector is zero.
double angleBetween(Vec2 u, Vec2 v);

enum class EnvironmentKind { OpenSquare, NarrowPassage, Custom };

/// Rectangular walkable area anchored at the origin, with explicit wall
/// segments and goal boxes along the bottom (y ~ 0) and top (y ~ height) edges.
struct Environment {
    std::string name;
    EnvironmentKind kind = EnvironmentKind::Custom;
    double width = 0.0;
    double height = 0.0;
    std::vector<Segment> walls;
    std::vector<Rect> topGoals;
    std::vector<Rect> bottomGoals;

    bool contains(Vec2 p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }
    Vec2 center() const { return {width * 0.5, height * 0.5}; }
    double area() const { return width * height; }

    /// Square with no declared walls.
    static Environment openSquare(double side);
    /// Passage of the given width (x) and length (y); both long edges are walls.
    static Environment narrowPassage(double width, double length);
};

/// Five goal boxes evenly spread along one horizontal edge.
std::vector<Rect> goalBoxesAlong(double width, double y0, double y1, int count = 5);

/// Minimum distance from `p` to any declared wall; +infinity when the
/// environment declares none.
double nearestWallDistance(const Environment& env, Vec2 p);

/// Minimum over the segment of nearestWallDistance.
double segmentWallClearance(const Environment& env, const Segment& s);

/// Area of the intersection of a disc with the environment rectangle.
double discAreaInside(const Environment& env, Vec2 center, double radius);

}  // namespace harmony
