#include "harmony/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace harmony {

Vec2 normalized(Vec2 v)
{
    const double n = v.norm();
    if (n == 0.0) {
        throw std::invalid_argument("cannot normalize a zero vector");
    }
    return v / n;
}

Vec2 rotated(Vec2 v, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {v.x * c - v.y * s, v.x * s + v.y * c};
}

double bearing(Vec2 v)
{
    return normalizeAngle(std::atan2(v.y, v.x));
}

double normalizeAngle(double angle)
{
    double a = std::fmod(angle, kTwoPi);
    if (a < 0.0) {
        a += kTwoPi;
    }
    // fmod of a tiny negative number can round up to exactly 2pi
    if (a >= kTwoPi) {
        a = 0.0;
    }
    return a;
}

double wrapToPi(double angle)
{
    double a = normalizeAngle(angle);
    if (a > kPi) {
        a -= kTwoPi;
    }
    return a;
}

Vec2 closestPointOnSegment(Vec2 p, const Segment& s)
{
    const Vec2 ab = s.b - s.a;
    const double len2 = ab.squaredNorm();
    if (len2 == 0.0) {
        return s.a;
    }
    const double t = std::clamp(dot(p - s.a, ab) / len2, 0.0, 1.0);
    return s.a + ab * t;
}

double distancePointSegment(Vec2 p, const Segment& s)
{
    return distance(p, closestPointOnSegment(p, s));
}

double angleBetween(Vec2 u, Vec2 v)
{
    if (u.squaredNorm() == 0.0 || v.squaredNorm() == 0.0) {
        throw std::invalid_argument("angle between zero-length vectors is undefined");
    }
    // atan2 form stays accurate near 0 and pi, unlike acos of the dot product
    return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

namespace {

bool segmentsIntersect(const Segment& s, const Segment& t)
{
    const double d1 = cross(s.b - s.a, t.a - s.a);
    const double d2 = cross(s.b - s.a, t.b - s.a);
    const double d3 = cross(t.b - t.a, s.a - t.a);
    const double d4 = cross(t.b - t.a, s.b - t.a);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double segmentSegmentDistance(const Segment& s, const Segment& t)
{
    if (segmentsIntersect(s, t)) {
        return 0.0;
    }
    return std::min({distancePointSegment(s.a, t), distancePointSegment(s.b, t),
                     distancePointSegment(t.a, s), distancePointSegment(t.b, s)});
}

}  // namespace

std::vector<Rect> goalBoxesAlong(double width, double y0, double y1, int count)
{
    std::vector<Rect> boxes;
    boxes.reserve(static_cast<std::size_t>(count));
    const double slot = width / count;
    const double half = std::min(0.5, slot * 0.25);
    for (int k = 0; k < count; ++k) {
        const double cx = slot * (k + 0.5);
        boxes.push_back({{cx - half, y0}, {cx + half, y1}});
    }
    return boxes;
}

Environment Environment::openSquare(double side)
{
    Environment env;
    env.name = "square";
    env.kind = EnvironmentKind::OpenSquare;
    env.width = side;
    env.height = side;
    env.bottomGoals = goalBoxesAlong(side, 0.0, 0.5);
    env.topGoals = goalBoxesAlong(side, side - 0.5, side);
    return env;
}

Environment Environment::narrowPassage(double width, double length)
{
    Environment env;
    env.name = "passage";
    env.kind = EnvironmentKind::NarrowPassage;
    env.width = width;
    env.height = length;
    env.walls = {{{0.0, 0.0}, {0.0, length}}, {{width, 0.0}, {width, length}}};
    env.bottomGoals = goalBoxesAlong(width, 0.0, 0.5);
    env.topGoals = goalBoxesAlong(width, length - 0.5, length);
    return env;
}

double nearestWallDistance(const Environment& env, Vec2 p)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& wall : env.walls) {
        best = std::min(best, distancePointSegment(p, wall));
    }
    return best;
}

double segmentWallClearance(const Environment& env, const Segment& s)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& wall : env.walls) {
        best = std::min(best, segmentSegmentDistance(s, wall));
    }
    return best;
}

double discAreaInside(const Environment& env, Vec2 center, double radius)
{
    // midpoint rule over vertical slices; each slice is clipped exactly
    constexpr int kSlices = 512;
    const double x0 = std::max(0.0, center.x - radius);
    const double x1 = std::min(env.width, center.x + radius);
    if (x1 <= x0) {
        return 0.0;
    }
    const double h = (x1 - x0) / kSlices;
    double area = 0.0;
    for (int i = 0; i < kSlices; ++i) {
        const double x = x0 + (i + 0.5) * h;
        const double dx = x - center.x;
        const double half = std::sqrt(std::max(0.0, radius * radius - dx * dx));
        const double lo = std::max(0.0, center.y - half);
        const double hi = std::min(env.height, center.y + half);
        if (hi > lo) {
            area += (hi - lo) * h;
        }
    }
    return area;
}

}  // namespace harmony
