#include "harmony/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>
#include <utility>

namespace harmony {

using nlohmann::json;

namespace {

struct NumberField {
    const char* key;
    double* target;
    int* intTarget = nullptr;
};

std::string join(const std::string& prefix, const std::string& key)
{
    return prefix.empty() ? key : prefix + "." + key;
}

void requireObject(const json& node, const std::string& path)
{
    if (!node.is_object()) {
        throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    }
}

double asNumber(const json& node, const std::string& path)
{
    if (!node.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    return node.get<double>();
}

void readNumbers(const json& node, const std::string& path, std::initializer_list<NumberField> fields)
{
    requireObject(node, path);
    for (const auto& [key, value] : node.items()) {
        const auto it = std::find_if(fields.begin(), fields.end(), [&](const NumberField& f) { return key == f.key; });
        if (it == fields.end()) {
            throw ConfigError(join(path, key), "unknown key");
        }
        if (it->intTarget) {
            if (!value.is_number_integer() || value.get<long long>() < INT_MIN || value.get<long long>() > INT_MAX) {
                throw ConfigError(join(path, key), "expected an integer");
            }
            *it->intTarget = value.get<int>();
        } else {
            *it->target = asNumber(value, join(path, key));
        }
    }
}

void readEnvironment(const json& node, ScenarioConfig& cfg)
{
    if (node.is_string()) {
        cfg.environment = node.get<std::string>();
        return;
    }
    requireObject(node, "environment");
    cfg.environment = "custom";
    for (const auto& [key, value] : node.items()) {
        const std::string path = "environment." + key;
        if (key == "type") {
            if (!value.is_string()) throw ConfigError(path, "expected a string");
            cfg.environment = value.get<std::string>();
        } else if (key == "width") {
            cfg.customWidth = asNumber(value, path);
        } else if (key == "height") {
            cfg.customHeight = asNumber(value, path);
        } else if (key == "walls") {
            if (!value.is_array()) throw ConfigError(path, "expected an array of [x1, y1, x2, y2]");
            cfg.customWalls.clear();
            for (std::size_t i = 0; i < value.size(); ++i) {
                const auto& w = value[i];
                const std::string wp = path + "[" + std::to_string(i) + "]";
                if (!w.is_array() || w.size() != 4) throw ConfigError(wp, "expected [x1, y1, x2, y2]");
                cfg.customWalls.push_back({{asNumber(w[0], wp), asNumber(w[1], wp)},
                                           {asNumber(w[2], wp), asNumber(w[3], wp)}});
            }
        } else {
            throw ConfigError(path, "unknown key");
        }
    }
}

}  // namespace

AvoidanceCondition parseCondition(std::string_view text)
{
    if (text == "none") return AvoidanceCondition::None;
    if (text == "proposed") return AvoidanceCondition::Proposed;
    throw ConfigError("condition", "expected 'none' or 'proposed', got '" + std::string(text) + "'");
}

ScenarioConfig parseScenario(std::string_view text)
{
    ScenarioConfig cfg;
    if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
        return cfg;
    }
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<root>", std::string("malformed JSON: ") + e.what());
    }
    requireObject(root, "");

    for (const auto& [key, value] : root.items()) {
        if (key == "environment") {
            readEnvironment(value, cfg);
        } else if (key == "condition") {
            if (!value.is_string()) throw ConfigError("condition", "expected a string");
            cfg.condition = parseCondition(value.get<std::string>());
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "proxemics") {
            auto& p = cfg.proxemics;
            readNumbers(value, "proxemics",
                        {{"personal_space_radius", &p.personalSpaceRadius},
                         {"formation_min", &p.formationMin},
                         {"formation_max", &p.formationMax},
                         {"max_alpha_deg", &p.maxAlphaDeg},
                         {"crowd_density_threshold", &p.crowdDensityThreshold},
                         {"c_space_radius", &p.cSpaceRadius}});
        } else if (key == "avoidance") {
            auto& a = cfg.avoidance;
            readNumbers(value, "avoidance",
                        {{"min_avoidance", &a.minAvoidance},
                         {"start_avoidance", &a.startAvoidance},
                         {"tracking_distance", &a.anticipate}});
        } else if (key == "comfort") {
            readNumbers(value, "comfort", {{"a", &cfg.comfort.a}, {"b", &cfg.comfort.b}});
        } else if (key == "planner") {
            auto& p = cfg.planner;
            readNumbers(value, "planner",
                        {{"c", &p.c},
                         {"d", &p.d},
                         {"territory_radius", &p.territoryRadius},
                         {"candidate_min_radius", &p.candidateMinRadius},
                         {"candidate_max_radius", &p.candidateMaxRadius},
                         {"candidate_radius_step", &p.candidateRadiusStep},
                         {"candidate_bearing_step_deg", &p.candidateBearingStepDeg},
                         {"wall_clearance", &p.wallClearance},
                         {"max_speed", &p.maxSpeed},
                         {"max_turn_rate_deg", &p.maxTurnRateDeg},
                         {"arrival_tolerance", &p.arrivalTolerance},
                         {"arrival_angle_deg", &p.arrivalAngleDeg},
                         {"replan_interval", &p.replanInterval},
                         {"prediction_dt", &p.predictionDt},
                         {"horizon_cap", &p.horizonCap},
                         {"refine_seeds", nullptr, &p.refineSeeds},
                         {"refine_min_step", &p.refineMinStep},
                         {"refine_max_steps", nullptr, &p.refineMaxSteps}});
        } else {
            json single = json::object();
            single[key] = value;
            readNumbers(single, "",
                        {{"density", &cfg.density},
                         {"speed_min", &cfg.speedMin},
                         {"speed_max", &cfg.speedMax},
                         {"duration", &cfg.duration},
                         {"dt", &cfg.dt},
                         {"interpersonal_distance", &cfg.interpersonalDistance},
                         {"body_radius", &cfg.bodyRadius},
                         {"spawn_exclusion", &cfg.spawnExclusion},
                         {"spawn_spacing", &cfg.spawnSpacing},
                         {"goal_tolerance", &cfg.goalTolerance},
                         {"user_turn_rate_deg", &cfg.userTurnRateDeg}});
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig loadScenarioFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("<file>", "cannot open scenario file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseScenario(buf.str());
}

std::string emitScenario(const ScenarioConfig& cfg)
{
    // ordered_json keeps insertion order so the output is stable
    nlohmann::ordered_json root;
    if (cfg.environment == "custom") {
        nlohmann::ordered_json env;
        env["type"] = "custom";
        env["width"] = cfg.customWidth;
        env["height"] = cfg.customHeight;
        env["walls"] = nlohmann::ordered_json::array();
        for (const auto& w : cfg.customWalls) {
            env["walls"].push_back({w.a.x, w.a.y, w.b.x, w.b.y});
        }
        root["environment"] = env;
    } else {
        root["environment"] = cfg.environment;
    }
    root["density"] = cfg.density;
    root["speed_min"] = cfg.speedMin;
    root["speed_max"] = cfg.speedMax;
    root["condition"] = toString(cfg.condition);
    root["duration"] = cfg.duration;
    root["dt"] = cfg.dt;
    root["seed"] = cfg.seed;
    root["interpersonal_distance"] = cfg.interpersonalDistance;
    root["body_radius"] = cfg.bodyRadius;
    root["spawn_exclusion"] = cfg.spawnExclusion;
    root["spawn_spacing"] = cfg.spawnSpacing;
    root["goal_tolerance"] = cfg.goalTolerance;
    root["user_turn_rate_deg"] = cfg.userTurnRateDeg;

    const auto& px = cfg.proxemics;
    root["proxemics"] = {{"personal_space_radius", px.personalSpaceRadius},
                         {"formation_min", px.formationMin},
                         {"formation_max", px.formationMax},
                         {"max_alpha_deg", px.maxAlphaDeg},
                         {"crowd_density_threshold", px.crowdDensityThreshold},
                         {"c_space_radius", px.cSpaceRadius}};
    const auto& av = cfg.avoidance;
    root["avoidance"] = {{"min_avoidance", av.minAvoidance},
                         {"start_avoidance", av.startAvoidance},
                         {"tracking_distance", av.anticipate}};
    root["comfort"] = {{"a", cfg.comfort.a}, {"b", cfg.comfort.b}};
    const auto& pl = cfg.planner;
    root["planner"] = {{"c", pl.c},
                       {"d", pl.d},
                       {"territory_radius", pl.territoryRadius},
                       {"candidate_min_radius", pl.candidateMinRadius},
                       {"candidate_max_radius", pl.candidateMaxRadius},
                       {"candidate_radius_step", pl.candidateRadiusStep},
                       {"candidate_bearing_step_deg", pl.candidateBearingStepDeg},
                       {"wall_clearance", pl.wallClearance},
                       {"max_speed", pl.maxSpeed},
                       {"max_turn_rate_deg", pl.maxTurnRateDeg},
                       {"arrival_tolerance", pl.arrivalTolerance},
                       {"arrival_angle_deg", pl.arrivalAngleDeg},
                       {"replan_interval", pl.replanInterval},
                       {"prediction_dt", pl.predictionDt},
                       {"horizon_cap", pl.horizonCap},
                       {"refine_seeds", pl.refineSeeds},
                       {"refine_min_step", pl.refineMinStep},
                       {"refine_max_steps", pl.refineMaxSteps}};
    return root.dump(2) + "\n";
}

}  // namespace harmony
