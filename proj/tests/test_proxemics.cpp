#include "harmony/proxemics.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace harmony;

namespace {

// independent reading of the band table
ArrangementType bandOracle(int sum)
{
    if (sum <= 60) return ArrangementType::Closed;
    if (sum >= 120) return ArrangementType::Open;
    return ArrangementType::LShaped;
}

PedestrianState pedAt(std::uint32_t id, Vec2 p)
{
    PedestrianState s;
    s.id = id;
    s.position = p;
    return s;
}

}  // namespace

TEST_CASE("arrangement bands on alpha + beta")
{
    CHECK(classifyArrangement(0.0) == ArrangementType::Closed);
    CHECK(classifyArrangement(60.0) == ArrangementType::Closed);
    CHECK(classifyArrangement(60.0001) == ArrangementType::LShaped);
    CHECK(classifyArrangement(119.999) == ArrangementType::LShaped);
    CHECK(classifyArrangement(120.0) == ArrangementType::Open);
    CHECK(classifyArrangement(180.0) == ArrangementType::Open);
    CHECK(classifyArrangement(RelativeAngles{40.0, 30.0}) == ArrangementType::LShaped);
    CHECK_THROWS_AS(classifyArrangement(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(classifyArrangement(181.0), std::invalid_argument);

    for (int a = 0; a <= 180; ++a) {
        for (int b = 0; a + b <= 180; ++b) {
            REQUIRE(classifyArrangement(RelativeAngles{double(a), double(b)}) == bandOracle(a + b));
        }
    }
}

TEST_CASE("relative angles of a facing pair")
{
    const Pose user({0.0, 0.0}, 0.0);
    const Pose vh({1.5, 0.0}, kPi);
    const auto ang = relativeAngles(user, vh);
    CHECK(ang.alpha == doctest::Approx(0.0));
    CHECK(ang.beta == doctest::Approx(0.0));

    const Pose side({0.0, 1.0}, 0.0);
    const auto s = relativeAngles(user, side);
    CHECK(s.alpha == doctest::Approx(90.0));
    CHECK(s.beta == doctest::Approx(90.0));

    CHECK_THROWS_AS(relativeAngles(user, Pose({0.0, 0.0}, 1.0)), std::invalid_argument);
}

TEST_CASE("f-formation availability")
{
    const ProxemicsParams params;
    const Pose user({0.0, 0.0}, 0.0);
    CHECK(isFformationAvailable(user, {1.0, 0.0}, params));
    CHECK(isFformationAvailable(user, {0.6, 0.0}, params));
    CHECK(isFformationAvailable(user, {1.5, 0.0}, params));
    CHECK_FALSE(isFformationAvailable(user, {0.59, 0.0}, params));
    CHECK_FALSE(isFformationAvailable(user, {2.0, 0.0}, params));
    // alpha exactly 90 is allowed, behind the user is not
    CHECK(isFformationAvailable(user, {0.0, 1.0}, params));
    CHECK_FALSE(isFformationAvailable(user, {-0.1, 1.0}, params));
}

TEST_CASE("feasible arrangements follow the reachable alpha + beta interval")
{
    using enum ArrangementType;
    CHECK(feasibleArrangementsForAlpha(0.0) == std::vector{Closed, LShaped});
    CHECK(feasibleArrangementsForAlpha(30.0) == std::vector{Closed, LShaped, Open});
    CHECK(feasibleArrangementsForAlpha(60.0) == std::vector{Closed, LShaped, Open});
    CHECK(feasibleArrangementsForAlpha(61.0) == std::vector{LShaped, Open});
    CHECK(feasibleArrangementsForAlpha(90.0) == std::vector{LShaped, Open});

    const ProxemicsParams params;
    const Pose user({0.0, 0.0}, 0.0);
    CHECK(feasibleArrangements(user, {2.0, 0.0}, params).empty());
    CHECK(feasibleArrangements(user, {-1.0, 0.0}, params).empty());

    // brute force over beta in [0, 90]
    for (int alpha = 0; alpha <= 90; ++alpha) {
        std::vector<ArrangementType> seen;
        for (int b10 = 0; b10 <= 900; ++b10) {
            const auto t = classifyArrangement(alpha + b10 / 10.0);
            if (std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
        }
        std::sort(seen.begin(), seen.end());
        CHECK(feasibleArrangementsForAlpha(alpha) == seen);
    }
}

TEST_CASE("beta choice realizes the requested band")
{
    for (int alpha = 0; alpha <= 90; alpha += 5) {
        for (const auto type : feasibleArrangementsForAlpha(alpha)) {
            const double beta = betaForArrangement(alpha, type);
            CHECK(beta >= 0.0);
            CHECK(beta <= 90.0);
            CHECK(classifyArrangement(alpha + beta) == type);
        }
    }
    CHECK(betaForArrangement(0.0, ArrangementType::Closed) == doctest::Approx(30.0));
    CHECK(betaForArrangement(0.0, ArrangementType::LShaped) == doctest::Approx(90.0));
    CHECK(betaForArrangement(45.0, ArrangementType::Open) == doctest::Approx(90.0));
}

TEST_CASE("vh orientation produces the requested beta and opens toward the user's view")
{
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> rad(0.6, 1.5);
    std::uniform_real_distribution<double> beta(0.0, 90.0);
    for (int i = 0; i < 500; ++i) {
        const Pose user({1.0, -2.0}, ang(gen));
        const Vec2 vhPos = user.position + heading(ang(gen)) * rad(gen);
        const double b = beta(gen);
        const Pose vh(vhPos, vhOrientationFor(user, vhPos, b));
        CHECK(relativeAngles(user, vh).beta == doctest::Approx(b).epsilon(1e-9));
        // the VH's facing leans to the same side of the dyad line as the user's
        const Vec2 line = vhPos - user.position;
        if (b > 1.0 && std::abs(cross(line, user.facing())) > 1e-3) {
            CHECK(cross(line, user.facing()) * cross(line, vh.facing()) > 0.0);
        }
    }
}

TEST_CASE("context preference table")
{
    using enum ArrangementType;
    const SpatialContext openUn{Definiteness::OpenSpace, Crowdedness::Uncrowded};
    const SpatialContext openCr{Definiteness::OpenSpace, Crowdedness::Crowded};
    const SpatialContext wallUn{Definiteness::NearWall, Crowdedness::Uncrowded};
    const SpatialContext wallCr{Definiteness::NearWall, Crowdedness::Crowded};
    CHECK(contextPreference(openUn, Closed) == 1.0);
    CHECK(contextPreference(openUn, LShaped) == 0.6);
    CHECK(contextPreference(openUn, Open) == 0.2);
    CHECK(contextPreference(openCr, Closed) == 0.2);
    CHECK(contextPreference(openCr, LShaped) == 1.0);
    CHECK(contextPreference(openCr, Open) == 0.2);
    CHECK(contextPreference(wallUn, Closed) == 0.6);
    CHECK(contextPreference(wallUn, LShaped) == 0.6);
    CHECK(contextPreference(wallUn, Open) == 1.0);
    CHECK(contextPreference(wallCr, Closed) == 0.2);
    CHECK(contextPreference(wallCr, LShaped) == 1.0);
    CHECK(contextPreference(wallCr, Open) == 0.6);
}

TEST_CASE("spatial context from walls and local density")
{
    const ProxemicsParams params;
    const auto square = Environment::openSquare(20.0);
    const Segment dyad{{10.0, 10.0}, {11.5, 10.0}};
    std::vector<PedestrianState> none;
    CHECK(classifySpatialContext(square, dyad, none, params) ==
          SpatialContext{Definiteness::OpenSpace, Crowdedness::Uncrowded});

    // 0.15 persons / m^2 over the 6 m disc needs ceil(0.15 * 36 pi) = 17
    const double area = kPi * 36.0;
    const int needed = static_cast<int>(std::ceil(params.crowdDensityThreshold * area - 1e-9));
    std::vector<PedestrianState> crowd;
    for (int i = 0; i < needed - 1; ++i) {
        crowd.push_back(pedAt(i, dyad.midpoint() + heading(i * 0.3) * 3.0));
    }
    CHECK(classifySpatialContext(square, dyad, crowd, params).crowdedness == Crowdedness::Uncrowded);
    crowd.push_back(pedAt(99, dyad.midpoint()));
    CHECK(classifySpatialContext(square, dyad, crowd, params).crowdedness == Crowdedness::Crowded);
    // someone outside the disc does not count
    crowd.back().position = dyad.midpoint() + Vec2{6.5, 0.0};
    CHECK(classifySpatialContext(square, dyad, crowd, params).crowdedness == Crowdedness::Uncrowded);

    const auto passage = Environment::narrowPassage(3.0, 20.0);
    // the centerline of a 3 m passage is 1.5 m from both walls
    const Segment along{{1.5, 10.0}, {1.5, 11.5}};
    CHECK(classifySpatialContext(passage, along, none, params).definiteness == Definiteness::OpenSpace);
    const Segment offCenter{{1.0, 10.0}, {1.0, 11.5}};
    CHECK(classifySpatialContext(passage, offCenter, none, params).definiteness == Definiteness::NearWall);
    const Segment across{{1.5, 10.0}, {0.5, 11.0}};
    CHECK(classifySpatialContext(passage, across, none, params).definiteness == Definiteness::NearWall);
    const auto wide = Environment::narrowPassage(5.0, 20.0);
    CHECK(classifySpatialContext(wide, {{2.5, 10.0}, {2.5, 11.5}}, none, params).definiteness ==
          Definiteness::OpenSpace);
}

TEST_CASE("proxemics parameter validation")
{
    ProxemicsParams p;
    CHECK_NOTHROW(p.validate());
    p.formationMin = 2.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
