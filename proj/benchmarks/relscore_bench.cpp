#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "relscore/baselines.hpp"
#include "relscore/distribution.hpp"
#include "relscore/metric.hpp"

namespace {

using namespace relscore;

std::vector<Sample> synthetic_rows(std::size_t n) {
    std::mt19937_64 gen(99);
    std::uniform_int_distribution<int> a(0, 9);
    std::uniform_int_distribution<int> b(0, 7);
    std::uniform_int_distribution<int> y(1, 8);
    std::vector<Sample> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(Sample{{"a" + std::to_string(a(gen)), "b" + std::to_string(b(gen))},
                              OutcomeLabel("L" + std::to_string(y(gen)))});
    }
    return rows;
}

const FeatureSchema kSchema{{"f1", "f2"}, "y"};

void BM_ErrScore(benchmark::State& state) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<DistanceTriple> d(1024);
    for (auto& t : d) t = DistanceTriple{unit(gen), unit(gen), unit(gen)};
    const RsParams params{2.0, 1.0};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(err_score(d[i++ & 1023], params));
    }
}
BENCHMARK(BM_ErrScore);

void BM_ScoreSample(benchmark::State& state) {
    const auto rows = synthetic_rows(2048);
    const DistributionTable table = build_distribution_table(rows, {}, kSchema);
    const ContextProjector project(kSchema, {});
    const RsParams params{2.0, 1.0};
    std::size_t i = 0;
    for (auto _ : state) {
        const Sample& s = rows[i++ & 2047];
        const ConditionalDistribution& dist = table.lookup(project(s), UnseenPolicy::Uniform);
        benchmark::DoNotOptimize(score_sample(rows[(i * 7) & 2047].outcome, s.outcome, dist,
                                              params));
    }
}
BENCHMARK(BM_ScoreSample);

void BM_BuildDistributionTable(benchmark::State& state) {
    const auto rows = synthetic_rows(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_distribution_table(rows, {}, kSchema));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildDistributionTable)->Range(1 << 10, 1 << 14)->Complexity();

void BM_EvaluateSplit(benchmark::State& state) {
    const auto rows = synthetic_rows(static_cast<std::size_t>(state.range(0)));
    const SplitSpec spec{0.7, 1, 3};
    const RsParams params{2.0, 1.0};
    const ContextProjector project(kSchema, {});
    for (auto _ : state) {
        auto [train, test] = split(rows, spec, 0);
        const DistributionTable table = build_distribution_table(rows, {}, kSchema);
        const auto predictor = fit(PredictorKind::MostProbable, train, {}, kSchema);
        const auto predictions = predictor->predict(test);
        std::vector<SampleEvaluation> evals;
        evals.reserve(test.size());
        for (std::size_t i = 0; i < test.size(); ++i) {
            evals.push_back(score_sample(predictions[i], test[i].outcome,
                                         table.lookup(project(test[i]),
                                                      UnseenPolicy::Uniform),
                                         params));
        }
        benchmark::DoNotOptimize(relevance_score(evals));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvaluateSplit)->Range(1 << 10, 1 << 13)->Complexity();

}  // namespace

BENCHMARK_MAIN();
