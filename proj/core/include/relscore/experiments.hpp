#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "relscore/baselines.hpp"
#include "relscore/dataset_io.hpp"
#include "relscore/metric.hpp"

namespace relscore {

/// One model under evaluation: either a native baseline or an external
/// prediction file covering the whole dataset.
struct ModelSpec {
    enum class Source { Baseline, PredictionFile };

    Source source = Source::Baseline;
    PredictorKind kind = PredictorKind::MostProbable;
    std::string prediction_path;

    std::string name() const;
};

/// Full configuration of an experiment run. Baselines are evaluated over
/// the shuffled splits of SplitSpec; prediction files are evaluated once
/// against the entire dataset (their indices address dataset rows).
struct RunConfig {
    std::string dataset_path;
    DatasetReadOptions read_options;
    std::set<std::string> excluded;
    std::vector<std::string> declared_labels;
    ProbabilitySource prob_source = ProbabilitySource::FullDataset;
    UnseenPolicy unseen = UnseenPolicy::Uniform;
    SplitSpec split;
    RsParams params;
    double tolerance = kProbabilityTolerance;
    std::vector<ModelSpec> models;
    bool include_samples = false;

    void validate() const;
};

/// (alpha, beta) grid for the sensitivity sweep. The exact limit rows are
/// the weight pairs (1, 0) and (0, 1): with one weight zero the error
/// reduces to the single remaining distance, which is the limit value.
struct SweepSpec {
    std::vector<RsParams> pairs = {{1.0, 2.0}, {1.0, 1.0}, {2.0, 1.0}};
    bool include_limits = true;
};

struct SweepRow {
    std::string model;
    double alpha = 0.0;
    double beta = 0.0;
    double rs = 0.0;
};

struct BoundsRow {
    std::string model;
    double rs_alpha_inf = 0.0;
    double rs_beta_inf = 0.0;
};

struct RandomControlResult {
    std::vector<EvaluationReport> real_reports;
    std::vector<EvaluationReport> randomized_reports;
    double expected_random_ca = 0.0;  // 100 / K
};

/// Scores every configured model: per shuffle, builds the scoring
/// distribution table (full dataset or train-only per config), fits the
/// baseline on the train split, scores the test split, then averages CA,
/// RS and the limit bounds across shuffles. One report per model.
std::vector<EvaluationReport> run_evaluate(const RunConfig& config);

/// RS per (alpha, beta) pair per model, recomputed from per-sample
/// distances cached once per model.
std::vector<SweepRow> run_sweep(const RunConfig& config, const SweepSpec& sweep);

/// The two limit aggregates per model. Also cross-checks them against RS at
/// (1e6, 1) and (1, 1e6) to 1e-3 and throws InternalError on disagreement.
std::vector<BoundsRow> run_bounds(const RunConfig& config);

/// Evaluates every model twice: on the real dataset and on a copy whose
/// outcomes are replaced by uniform draws over the alphabet. On the
/// randomized arm any predictor's expected CA is 100 / K.
RandomControlResult run_random_control(const RunConfig& config);

std::string sweep_to_csv(std::span<const SweepRow> rows);
std::string sweep_to_json(std::span<const SweepRow> rows);
std::string bounds_to_csv(std::span<const BoundsRow> rows);
std::string bounds_to_json(std::span<const BoundsRow> rows);
std::string random_control_to_json(const RandomControlResult& result);
std::string random_control_to_csv(const RandomControlResult& result);

}  // namespace relscore
