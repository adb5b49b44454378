#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "ridet/atcf.hpp"
#include "ridet/bptt.hpp"
#include "ridet/elman.hpp"
#include "ridet/metrics.hpp"
#include "ridet/windows.hpp"

namespace {

using namespace ridet;

LabeledWindow random_window(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    LabeledWindow w;
    w.inputs.resize(kWindowLen);
    for (double& x : w.inputs) x = unit(gen);
    w.label = unit(gen) < 0.2;
    w.cyclone_id = "BENCH";
    return w;
}

std::vector<LabeledWindow> random_windows(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<LabeledWindow> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(random_window(gen));
    return out;
}

void BM_Forward(benchmark::State& state) {
    const Topology topo{1, int(state.range(0)), 1, kWindowLen};
    const auto net = init_weights(topo, 7);
    std::mt19937_64 gen(11);
    const auto window = random_window(gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(forward(net, window.inputs));
    }
}
BENCHMARK(BM_Forward)->Arg(5)->Arg(10);

void BM_BpttGradient(benchmark::State& state) {
    const Topology topo{1, int(state.range(0)), 1, kWindowLen};
    const auto net = init_weights(topo, 7);
    std::mt19937_64 gen(11);
    const auto window = random_window(gen);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bptt_gradients(net, window));
    }
}
BENCHMARK(BM_BpttGradient)->Arg(5)->Arg(10);

void BM_TrainEpoch(benchmark::State& state) {
    const auto windows = random_windows(1000, 23);
    TrainConfig config;
    config.max_epochs = 1;
    const Topology topo{1, int(state.range(0)), 1, kWindowLen};
    for (auto _ : state) {
        auto [net, history] = train(init_weights(topo, 7), windows, config);
        benchmark::DoNotOptimize(net);
    }
}
BENCHMARK(BM_TrainEpoch)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_ParseBdeck(benchmark::State& state) {
    std::string deck;
    std::mt19937_64 gen(3);
    std::uniform_int_distribution<int> wind(20, 140);
    for (int cyclone = 0; cyclone < 50; ++cyclone) {
        for (int i = 0; i < 40; ++i) {
            const int day = 10 + i / 4;
            const int hour = (i % 4) * 6;
            char line[128];
            std::snprintf(line, sizeof line, "SH, %02d, 1995%02d%02d%02d, , BEST, 0, %dS, %dE, %d",
                          cyclone + 1, 1, day, hour, 150 + cyclone, 1600 + cyclone, wind(gen));
            deck += line;
            deck += '\n';
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_atcf_bdeck(deck));
    }
}
BENCHMARK(BM_ParseBdeck)->Unit(benchmark::kMillisecond);

void BM_Roc(benchmark::State& state) {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> scores(10000);
    std::vector<bool> labels(10000);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        scores[i] = unit(gen);
        labels[i] = i % 2 == 0;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(roc_from_scores(scores, labels));
    }
}
BENCHMARK(BM_Roc)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
