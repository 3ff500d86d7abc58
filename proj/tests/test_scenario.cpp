#include "harmony/scenario.hpp"

#include <doctest.h>

using namespace harmony;

namespace {

std::string fieldOf(const std::string& text)
{
    try {
        parseScenario(text);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<accepted>";
}

}  // namespace

TEST_CASE("empty input gives the defaults")
{
    CHECK(parseScenario("") == ScenarioConfig{});
    CHECK(parseScenario("  \n") == ScenarioConfig{});
    CHECK(parseScenario("{}") == ScenarioConfig{});
}

TEST_CASE("values are read")
{
    const auto c = parseScenario(R"({"environment": "passage", "density": 0.1, "seed": 42,
        "condition": "none", "planner": {"c": 2.5, "d": 1}, "avoidance": {"tracking_distance": 20}})");
    CHECK(c.environment == "passage");
    CHECK(c.density == 0.1);
    CHECK(c.seed == 42);
    CHECK(c.condition == AvoidanceCondition::None);
    CHECK(c.planner.c == 2.5);
    CHECK(c.planner.d == 1.0);
    CHECK(c.avoidance.anticipate == 20.0);
    CHECK(c.planner.territoryRadius == ScenarioConfig{}.planner.territoryRadius);
}

TEST_CASE("round trip")
{
    ScenarioConfig c;
    c.environment = "custom";
    c.customWidth = 8.0;
    c.customHeight = 5.0;
    c.customWalls = {{{0, 0}, {8, 0}}, {{4, 1}, {4, 4}}};
    c.density = 0.123456789;
    c.seed = 99;
    c.condition = AvoidanceCondition::None;
    c.planner.c = 0.3;
    c.comfort.a = -1000.0;
    c.planner.refineSeeds = 0;
    c.planner.refineMaxSteps = 9;
    CHECK(parseScenario(emitScenario(c)) == c);
    CHECK(parseScenario(emitScenario(ScenarioConfig{})) == ScenarioConfig{});
    CHECK(emitScenario(c) == emitScenario(parseScenario(emitScenario(c))));
}

TEST_CASE("errors name the field")
{
    CHECK(fieldOf(R"({"densty": 0.1})") == "densty");
    CHECK(fieldOf(R"({"density": "high"})") == "density");
    CHECK(fieldOf(R"({"density": -1})") == "density");
    CHECK(fieldOf(R"({"planner": {"bogus": 1}})") == "planner.bogus");
    CHECK(fieldOf(R"({"planner": {"c": true}})") == "planner.c");
    CHECK(fieldOf(R"({"seed": -3})") == "seed");
    CHECK(fieldOf(R"({"planner": {"refine_seeds": 1.5}})") == "planner.refine_seeds");
    CHECK(fieldOf(R"({"planner": {"refine_seeds": -1}})") == "planner");
    CHECK(fieldOf(R"({"condition": "maybe"})") == "condition");
    CHECK(fieldOf(R"({"environment": "moon"})") == "environment");
    CHECK(fieldOf(R"({"environment": {"type": "custom", "walls": [[0, 0, 1]]}})") == "environment.walls[0]");
    CHECK(fieldOf(R"({"avoidance": {"min_avoidance": 3}})") == "avoidance");
    CHECK(fieldOf("{\"density\": ") == "<root>");
    CHECK(fieldOf("[1, 2]") == "<root>");
    CHECK_THROWS_AS(loadScenarioFile("/nonexistent/scenario.json"), ConfigError);
}
