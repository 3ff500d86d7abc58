// Acceptance suite. One PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include "harmony/comfort.hpp"
#include "harmony/experiment.hpp"
#include "harmony/planner.hpp"
#include "harmony/prediction.hpp"
#include "harmony/proxemics.hpp"
#include "harmony/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <thread>

using namespace harmony;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail)
{
    std::printf("[%s] criterion %d %-34s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds(std::chrono::steady_clock::time_point since)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

int jobs()
{
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

void comfortEndpoints()
{
    const ComfortCoefficients k;
    const double at450 = comfortAtDistance(0.450, k);
    const double at670 = comfortAtDistance(0.67005, k);
    report(1, "comfort endpoints", at450 == 0.0 && std::abs(at670 - 1.0) <= 1e-3,
           fmt("c(450)=%.6g c(670.05)=%.6g", at450, at670));
}

void avoidanceGeometryCheck()
{
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int bad = 0;
    double worstFormula = 0.0;
    double worstMiss = 0.0;
    const Vec2 user{0, 0};
    const double dt = 0.1;
    for (int i = 0; i < 1000; ++i) {
        AvoidanceParams p;
        p.minAvoidance = 0.3 + 1.2 * unit(gen);
        p.startAvoidance = p.minAvoidance + 0.05 + 3.0 * unit(gen);
        p.anticipate = std::max(6.0, p.startAvoidance);
        PedestrianState ped;
        ped.preferredSpeed = 1.0 + 0.5 * unit(gen);
        const double approach = unit(gen) * kTwoPi;
        const double offset = (2.0 * unit(gen) - 1.0) * p.minAvoidance * 0.95;
        const Vec2 dir = heading(approach + kPi);
        const Vec2 side = rotated(dir, kPi / 2.0);
        const double lead = p.startAvoidance + 1.0 + 2.0 * unit(gen);
        ped.position = user - dir * lead + side * offset;
        ped.velocity = dir * ped.preferredSpeed;
        ped.goal = ped.position + dir * 50.0;

        // closed form at the current range
        const double range = distance(ped.position, user);
        const auto g = avoidanceGeometry(ped, user, p);
        worstFormula = std::max(worstFormula, std::abs(g.deviation - std::asin(p.minAvoidance / range)));

        const double horizon = (lead + p.startAvoidance + 2.0) / ped.preferredSpeed;
        const auto traj = predictTrajectory(ped, user, horizon, dt, p);
        double closest = 1e9;
        for (const auto& s : traj.samples) closest = std::min(closest, distance(s.position, user));
        const double miss = std::abs(closest - p.minAvoidance);
        worstMiss = std::max(worstMiss, miss / (ped.preferredSpeed * dt));
        if (miss > ped.preferredSpeed * dt) ++bad;
    }
    report(2, "avoidance geometry", bad == 0 && worstFormula <= 1e-12,
           fmt("out-of-band=%g/1000 worst=%.3g*v*dt asin-err=%.2g", bad, worstMiss, worstFormula));
}

ArrangementType bandOracle(int sum)
{
    if (sum <= 60) return ArrangementType::Closed;
    if (sum < 120) return ArrangementType::LShaped;
    return ArrangementType::Open;
}

void classifierCheck()
{
    int total = 0;
    int match = 0;
    for (int a = 0; a <= 180; ++a) {
        for (int b = 0; a + b <= 180; ++b) {
            ++total;
            match += classifyArrangement(RelativeAngles{static_cast<double>(a), static_cast<double>(b)}) ==
                     bandOracle(a + b);
        }
    }
    report(3, "arrangement classifier", match == total, fmt("%g/%g cases", match, total));
}

void plannerOracleCheck()
{
    const auto start = std::chrono::steady_clock::now();
    int exactBad = 0;
    int fineBad = 0;
    double worstRatio = 1e9;
    for (int k = 1; k <= 100; ++k) {
        ScenarioConfig cfg;
        cfg.environment = k % 2 ? "square12" : "passage";
        cfg.seed = static_cast<std::uint64_t>(k);
        cfg.duration = 60.0;
        Simulation sim(cfg);
        for (int t = 0; t < 20 + 3 * k; ++t) sim.step();

        const auto& env = sim.environment();
        const PlannerConfig pc = cfg.plannerConfig();
        const Segment dyad{sim.user().position, sim.vh().position};
        const auto trajs = forecastAnticipated(dyad, sim.pedestrians(), pc);
        ScoringInput in;
        in.user = sim.user();
        in.currentVh = sim.vh().position;
        in.context = classifySpatialContext(env, dyad, sim.pedestrians(), pc.proxemics);
        in.trajectories = trajs;
        in.proxemics = pc.proxemics;
        in.comfort = pc.comfort;
        in.planner = pc.planner;
        const auto cands = generateCandidates(in.user, in.currentVh, env, pc.planner);
        const auto scored = evaluateCandidates(cands, in, env, true);
        const double winner = decide(scored).utility;

        const auto rescore = [&](Vec2 c) {
            const double ig = ingroupComfort(c, in.user, in.context, pc.proxemics);
            const double og = outgroupComfort(c, in.user.position, trajs, pc.comfort);
            return (ig + pc.planner.c * og) / (1.0 + pc.planner.d * distance(c, in.currentVh));
        };
        double best = -1.0;
        for (const auto& c : scored) best = std::max(best, rescore(c.position));
        if (winner < best) ++exactBad;

        PlannerParams fine = pc.planner;
        fine.candidateRadiusStep /= 4.0;
        fine.candidateBearingStepDeg /= 4.0;
        double fineBest = -1.0;
        for (const Vec2 c : generateCandidates(in.user, in.currentVh, env, fine)) fineBest = std::max(fineBest, rescore(c));
        worstRatio = std::min(worstRatio, winner / fineBest);
        if (winner < 0.99 * fineBest) ++fineBad;
    }
    const double took = seconds(start);
    report(4, "planner oracle equivalence", exactBad == 0 && fineBad == 0 && took < 30.0,
           fmt("below-exact=%g below-0.99*fine=%g worst-ratio=%.4f %.1fs", exactBad, fineBad, worstRatio, took));
}

struct Pooled {
    std::size_t socialNone = 0, socialProposed = 0, physNone = 0, physProposed = 0;
    double stableSum = 0.0, ingroupSum = 0.0;
    int n = 0;

    void add(const ResultRow& r)
    {
        socialNone += r.socialNone;
        socialProposed += r.socialProposed;
        physNone += r.physicalityNone;
        physProposed += r.physicalityProposed;
        stableSum += r.stableProposed;
        ingroupSum += r.meanIngroup;
        ++n;
    }
    double social() const { return reductionRatio(socialNone, socialProposed).value_or(1.0); }
    double phys() const { return reductionRatio(physNone, physProposed).value_or(1.0); }
    double both() const
    {
        return reductionRatio(socialNone + physNone, socialProposed + physProposed).value_or(1.0);
    }
    double stable() const { return n ? stableSum / n : 0.0; }
    double ingroup() const { return n ? ingroupSum / n : 0.0; }
};

const std::vector<double> kDensities{0.05, 0.10, 0.15, 0.20, 0.25};
const std::vector<std::string> kEnvs{"square20", "passage"};

void matrixChecks()
{
    const auto start = std::chrono::steady_clock::now();
    ScenarioConfig base;
    base.duration = 600.0;
    const auto rows = runMatrix(base, kEnvs, kDensities, {1, 2, 3, 4, 5}, jobs());
    const double took = seconds(start);

    std::map<std::pair<std::string, double>, Pooled> cell;
    for (const auto& r : rows) cell[{r.environment, r.density}].add(r);

    for (const auto& env : kEnvs) {
        std::cout << "  " << env << ":";
        for (double d : kDensities) {
            const auto& c = cell[{env, d}];
            std::cout << "  " << formatNumber(d) << " social " << formatReductionCell(c.socialNone, c.socialProposed)
                      << " phys " << formatReductionCell(c.physNone, c.physProposed) << " stable "
                      << std::lround(c.stable() * 100) << "%;";
        }
        std::cout << "\n";
    }

    std::size_t low = 0;
    for (const auto& env : kEnvs) {
        const auto& c = cell[{env, 0.05}];
        low += c.socialProposed + c.physProposed;
    }
    report(5, "density 0.05 replication", low <= 2, fmt("conflicts across 10 proposed trials=%g (limit 2)", low));

    bool a = true;
    bool b = true;
    bool d = true;
    std::string why;
    for (const auto& env : kEnvs) {
        for (std::size_t i = 1; i < kDensities.size(); ++i) {
            const auto& prev = cell[{env, kDensities[i - 1]}];
            const auto& cur = cell[{env, kDensities[i]}];
            if (cur.social() > prev.social() || cur.phys() > prev.phys()) {
                a = false;
                why += " reduction rises at " + env + "/" + formatNumber(kDensities[i]);
            }
            if (!(cur.stable() < prev.stable() + 0.02)) {
                b = false;
                why += " stable rises at " + env + "/" + formatNumber(kDensities[i]);
            }
        }
    }
    for (double den : kDensities) {
        if (!(cell[{"passage", den}].stable() > cell[{"square20", den}].stable())) {
            d = false;
            why += " passage not steadier at " + formatNumber(den);
        }
    }
    const auto& dense = cell[{"square20", 0.25}];
    const bool c = dense.social() >= 0.60 && dense.phys() >= 0.80;
    report(6, "density trends", a && b && c && d,
           fmt("(a)%g (b)%g (c)%g (d)%g", a, b, c, d) +
               fmt(" square20@0.25 social=%.1f%% phys=%.1f%%", dense.social() * 100, dense.phys() * 100) +
               fmt(" %.0fs", took) + why);
}

std::vector<Pooled> sweep(SweepAxis axis, const std::vector<std::string>& values)
{
    ExperimentSpec spec;
    spec.base.duration = 600.0;
    spec.axis = axis;
    spec.values = values;
    spec.seeds = {1, 2, 3, 4, 5};
    spec.jobs = jobs();
    std::vector<Pooled> out(values.size());
    for (const auto& r : runAblation(spec)) {
        const auto idx = std::find(values.begin(), values.end(), r.value) - values.begin();
        out[static_cast<std::size_t>(idx)].add(r);
    }
    return out;
}

void ablationChecks()
{
    const auto start = std::chrono::steady_clock::now();
    const auto c = sweep(SweepAxis::CoefficientC, {"0.5", "1", "2", "4"});
    const auto d = sweep(SweepAxis::CoefficientD, {"0.5", "1", "2"});
    const auto t = sweep(SweepAxis::TrackingDistance, {"6", "20"});

    bool cOk = c.back().both() > c.front().both() && c.back().ingroup() < c.front().ingroup();
    for (std::size_t i = 1; i < c.size(); ++i) {
        cOk = cOk && c[i].both() >= c[i - 1].both() && c[i].ingroup() <= c[i - 1].ingroup();
    }
    bool dOk = d.back().both() < d.front().both() && d.back().stable() > d.front().stable();
    for (std::size_t i = 1; i < d.size(); ++i) {
        dOk = dOk && d[i].both() <= d[i - 1].both() && d[i].stable() >= d[i - 1].stable();
    }
    const double trackDelta = std::abs(t[1].both() - t[0].both()) * 100.0;
    const bool tOk = trackDelta < 5.0;

    std::ostringstream detail;
    detail << "c:";
    for (const auto& p : c) detail << ' ' << std::lround(p.both() * 100) << "%/" << formatNumber(p.ingroup());
    detail << " d:";
    for (const auto& p : d) detail << ' ' << std::lround(p.both() * 100) << "%/" << std::lround(p.stable() * 100);
    detail << " tracking delta=" << formatNumber(trackDelta) << "pt " << std::lround(seconds(start)) << "s";
    report(7, "ablation trends", cOk && dOk && tOk, (cOk ? "" : "[c] ") + std::string(dOk ? "" : "[d] ") +
                                                        (tOk ? "" : "[tracking] ") + detail.str());
}

void determinismCheck()
{
    ScenarioConfig cfg;
    cfg.environment = "square20";
    cfg.density = 0.2;
    cfg.duration = 120.0;
    cfg.seed = 17;
    std::ostringstream t1;
    std::ostringstream t2;
    runTrial(cfg, &t1);
    runTrial(cfg, &t2);

    ExperimentSpec spec;
    spec.base = cfg;
    spec.axis = SweepAxis::Density;
    spec.values = {"0.2"};
    spec.seeds = {17};
    std::ostringstream c1;
    std::ostringstream c2;
    writeCsv(runAblation(spec), c1);
    spec.jobs = jobs();
    writeCsv(runAblation(spec), c2);
    const bool ok = t1.str() == t2.str() && c1.str() == c2.str() && !t1.str().empty();
    report(8, "determinism", ok, fmt("trace bytes=%g csv bytes=%g", static_cast<double>(t1.str().size()),
                                     static_cast<double>(c1.str().size())));
}

void performanceCheck()
{
    ScenarioConfig cfg;
    cfg.environment = "square20";
    cfg.density = 0.25;
    cfg.duration = 600.0;
    const auto start = std::chrono::steady_clock::now();
    Simulation sim(cfg);
    sim.run();
    const double took = seconds(start);
    report(9, "performance", took < 10.0 && sim.pedestrians().size() == 100 && sim.tick() == 6000,
           fmt("%.2fs for %g ticks with %g pedestrians", took, static_cast<double>(sim.tick()),
               static_cast<double>(sim.pedestrians().size())));
}

}  // namespace

int main()
{
    comfortEndpoints();
    avoidanceGeometryCheck();
    classifierCheck();
    plannerOracleCheck();
    matrixChecks();
    ablationChecks();
    determinismCheck();
    performanceCheck();
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
