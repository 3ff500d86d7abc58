// Serial vs OpenMP: candidate scoring on crowded snapshots, then trial batches.

#include "harmony/experiment.hpp"
#include "harmony/planner.hpp"
#include "harmony/simulation.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <thread>

using namespace harmony;

namespace {

template <class F>
double timeIt(F&& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv)
{
    const int reps = argc > 1 ? std::atoi(argv[1]) : 200;
    const int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    ScenarioConfig cfg;
    cfg.environment = "square20";
    cfg.density = 0.25;
    cfg.duration = 60.0;
    cfg.planner.horizonCap = 5.0;  // longer forecasts make the kernel worth splitting
    Simulation sim(cfg);
    for (int i = 0; i < 50; ++i) sim.step();

    const auto pc = cfg.plannerConfig();
    const Segment dyad{sim.user().position, sim.vh().position};
    const auto trajs = forecastAnticipated(dyad, sim.pedestrians(), pc);
    ScoringInput in;
    in.user = sim.user();
    in.currentVh = sim.vh().position;
    in.context = classifySpatialContext(sim.environment(), dyad, sim.pedestrians(), pc.proxemics);
    in.trajectories = trajs;
    in.proxemics = pc.proxemics;
    in.comfort = pc.comfort;
    in.planner = pc.planner;
    PlannerParams fine = pc.planner;
    fine.candidateRadiusStep /= 4.0;
    fine.candidateBearingStepDeg /= 4.0;
    const auto cands = generateCandidates(in.user, in.currentVh, sim.environment(), fine);

    double sink = 0.0;
    const double serial = timeIt([&] {
        for (int r = 0; r < reps; ++r) sink += scoreCandidatesSerial(cands, in).back().utility;
    });
    const double parallel = timeIt([&] {
        for (int r = 0; r < reps; ++r) sink += scoreCandidatesParallel(cands, in).back().utility;
    });
    std::printf("scoring  %zu candidates x %zu forecasts x %d reps\n", cands.size(), trajs.size(), reps);
    std::printf("  serial   %8.3f ms/call\n", serial / reps * 1e3);
    std::printf("  parallel %8.3f ms/call  speedup %.2fx\n", parallel / reps * 1e3, serial / parallel);

    std::vector<ScenarioConfig> batch;
    for (std::uint64_t s = 1; s <= 8; ++s) {
        ScenarioConfig c;
        c.duration = 120.0;
        c.seed = s;
        batch.push_back(c);
    }
    const double one = timeIt([&] { sink += static_cast<double>(runTrials(batch, 1).size()); });
    const double many = timeIt([&] { sink += static_cast<double>(runTrials(batch, threads).size()); });
    std::printf("trials   8 x 120 s square12\n");
    std::printf("  1 thread   %7.2f s\n", one);
    std::printf("  %2d threads %7.2f s  speedup %.2fx\n", threads, many, one / many);
    return sink == 0.123 ? 1 : 0;
}
