#include "relscore/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "relscore/errors.hpp"
#include "relscore/numeric.hpp"
#include "relscore/rng.hpp"
#include "report_json.hpp"

namespace relscore {

std::string ModelSpec::name() const {
    if (source == Source::Baseline) return std::string(predictor_kind_name(kind));
    return "file:" + prediction_path;
}

void RunConfig::validate() const {
    if (dataset_path.empty()) throw std::invalid_argument("run config: dataset path required");
    if (models.empty())
        throw std::invalid_argument(
            "run config: at least one baseline or prediction file required");
    params.validate();
    split.validate();
    if (tolerance < 0.0)
        throw std::invalid_argument("run config: tolerance must be non-negative");
    for (const std::string& label : declared_labels) {
        if (label.empty())
            throw std::invalid_argument("run config: declared labels must be non-empty");
    }
    for (const ModelSpec& model : models) {
        if (model.source == ModelSpec::Source::PredictionFile) {
            if (model.prediction_path.empty())
                throw std::invalid_argument("run config: prediction file path is empty");
            if (prob_source == ProbabilitySource::TrainOnly)
                throw std::invalid_argument(
                    "run config: prob-source=train requires baseline models; prediction "
                    "files are evaluated against the full dataset");
        }
    }
}

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

struct LoadedRun {
    FeatureSchema schema;
    std::vector<Sample> samples;
    std::vector<OutcomeLabel> declared;
    std::vector<OutcomeLabel> alphabet;
    std::string digest;
    std::string arm;  // empty outside random-control runs
};

LoadedRun load_run(const RunConfig& config) {
    config.validate();
    LoadedDataset data = load_dataset(config.dataset_path, config.read_options);
    LoadedRun run;
    run.schema = std::move(data.schema);
    run.samples = std::move(data.samples);
    for (const std::string& label : config.declared_labels) run.declared.emplace_back(label);
    run.alphabet = collect_alphabet(run.samples, run.declared);
    run.digest = file_digest(config.dataset_path);
    return run;
}

struct ModelRun {
    std::string model;
    std::size_t shuffles_used = 0;
    std::vector<std::vector<SampleEvaluation>> evals;  // one vector per shuffle
};

std::vector<SampleEvaluation> score_split(std::span<const Sample> test,
                                          std::span<const OutcomeLabel> predictions,
                                          const DistributionTable& table,
                                          const ContextProjector& project,
                                          const RunConfig& config) {
    std::vector<SampleEvaluation> evals;
    evals.reserve(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
        const ConditionalDistribution& dist = table.lookup(project(test[i]), config.unseen);
        evals.push_back(score_sample(predictions[i], test[i].outcome, dist, config.params,
                                     config.tolerance));
    }
    return evals;
}

ModelRun evaluate_model(const LoadedRun& run, const RunConfig& config, const ModelSpec& model) {
    ModelRun out;
    out.model = model.name();
    const ContextProjector project(run.schema, config.excluded);

    if (model.source == ModelSpec::Source::PredictionFile) {
        const PredictionFile predictions =
            load_predictions(model.prediction_path, run.samples.size());
        const DistributionTable table = build_distribution_table(
            run.samples, config.excluded, run.schema, run.declared,
            ProbabilitySource::FullDataset);
        out.evals.push_back(
            score_split(run.samples, predictions.labels(), table, project, config));
        out.shuffles_used = 1;
        return out;
    }

    std::optional<DistributionTable> full_table;
    if (config.prob_source == ProbabilitySource::FullDataset) {
        full_table = build_distribution_table(run.samples, config.excluded, run.schema,
                                              run.declared, ProbabilitySource::FullDataset);
    }
    for (int i = 0; i < config.split.shuffle_count; ++i) {
        auto [train, test] = split(run.samples, config.split, i);
        std::optional<DistributionTable> train_table;
        if (!full_table.has_value()) {
            train_table = build_distribution_table(train, config.excluded, run.schema,
                                                   run.declared, ProbabilitySource::TrainOnly);
        }
        const DistributionTable& table = full_table.has_value() ? *full_table : *train_table;
        const auto predictor =
            fit(model.kind, train, config.excluded, run.schema, run.declared,
                derive_seed(config.split.seed, "predict:" + out.model,
                            static_cast<std::uint64_t>(i)));
        const std::vector<OutcomeLabel> predictions = predictor->predict(test);
        out.evals.push_back(score_split(test, predictions, table, project, config));
    }
    out.shuffles_used = static_cast<std::size_t>(config.split.shuffle_count);
    return out;
}

double shuffle_ca(std::span<const SampleEvaluation> evals) {
    std::vector<OutcomeLabel> predicted;
    std::vector<OutcomeLabel> actual;
    predicted.reserve(evals.size());
    actual.reserve(evals.size());
    for (const SampleEvaluation& e : evals) {
        predicted.push_back(e.predicted);
        actual.push_back(e.actual);
    }
    return classification_accuracy(predicted, actual);
}

template <typename PerShuffle>
double mean_over_shuffles(const ModelRun& run, PerShuffle&& per_shuffle) {
    CompensatedSum sum;
    for (const auto& evals : run.evals) sum.add(per_shuffle(evals));
    return sum.value() / static_cast<double>(run.evals.size());
}

EvaluationReport assemble_report(const LoadedRun& run, const RunConfig& config,
                                 const ModelRun& model_run) {
    EvaluationReport report;
    report.params = config.params;
    report.rs = mean_over_shuffles(model_run, [](std::span<const SampleEvaluation> evals) {
        return relevance_score(evals);
    });
    report.ca = mean_over_shuffles(model_run, shuffle_ca);
    report.rs_alpha_inf = mean_over_shuffles(
        model_run,
        [](std::span<const SampleEvaluation> evals) { return rs_limit_alpha(evals); });
    report.rs_beta_inf = mean_over_shuffles(
        model_run,
        [](std::span<const SampleEvaluation> evals) { return rs_limit_beta(evals); });

    std::size_t evaluated = 0;
    for (CaseLabel c : kAllCases) report.case_histogram.emplace(c, 0);
    for (const auto& evals : model_run.evals) {
        evaluated += evals.size();
        for (const SampleEvaluation& e : evals) ++report.case_histogram.at(e.relevance_case);
    }
    if (config.include_samples) {
        std::vector<SampleEvaluation> all;
        all.reserve(evaluated);
        for (const auto& evals : model_run.evals) all.insert(all.end(), evals.begin(), evals.end());
        report.per_sample = std::move(all);
    }

    report.provenance["model"] = model_run.model;
    report.provenance["dataset_path"] = config.dataset_path;
    report.provenance["dataset_digest"] = run.digest;
    std::string excluded;
    for (const std::string& f : config.excluded) {
        if (!excluded.empty()) excluded += ',';
        excluded += f;
    }
    report.provenance["excluded"] = excluded;
    report.provenance["split_seed"] = std::to_string(config.split.seed);
    report.provenance["train_fraction"] = format_number(config.split.train_fraction);
    report.provenance["shuffles"] = std::to_string(model_run.shuffles_used);
    report.provenance["prob_source"] =
        std::string(probability_source_name(config.prob_source));
    report.provenance["unseen_policy"] = std::string(unseen_policy_name(config.unseen));
    report.provenance["evaluation_split"] =
        model_run.shuffles_used == 1 && model_run.model.rfind("file:", 0) == 0
            ? "full-dataset"
            : "shuffled-test";
    report.provenance["evaluated_samples"] = std::to_string(evaluated);
    if (!run.arm.empty()) report.provenance["arm"] = run.arm;

    report.validate();
    return report;
}

std::vector<EvaluationReport> evaluate_loaded(const LoadedRun& run, const RunConfig& config) {
    std::vector<EvaluationReport> reports;
    reports.reserve(config.models.size());
    for (const ModelSpec& model : config.models) {
        reports.push_back(assemble_report(run, config, evaluate_model(run, config, model)));
    }
    return reports;
}

}  // namespace

std::vector<EvaluationReport> run_evaluate(const RunConfig& config) {
    return evaluate_loaded(load_run(config), config);
}

std::vector<SweepRow> run_sweep(const RunConfig& config, const SweepSpec& sweep) {
    std::vector<RsParams> pairs = sweep.pairs;
    if (sweep.include_limits) {
        pairs.push_back(RsParams{1.0, 0.0});
        pairs.push_back(RsParams{0.0, 1.0});
    }
    if (pairs.empty()) throw std::invalid_argument("sweep: no (alpha, beta) pairs");
    for (const RsParams& p : pairs) p.validate();

    const LoadedRun run = load_run(config);
    std::vector<SweepRow> rows;
    rows.reserve(pairs.size() * config.models.size());
    for (const ModelSpec& model : config.models) {
        const ModelRun model_run = evaluate_model(run, config, model);
        for (const RsParams& p : pairs) {
            const double rs = mean_over_shuffles(
                model_run, [&p](std::span<const SampleEvaluation> evals) {
                    return relevance_score_at(evals, p);
                });
            rows.push_back(SweepRow{model_run.model, p.alpha, p.beta, rs});
        }
    }
    return rows;
}

std::vector<BoundsRow> run_bounds(const RunConfig& config) {
    const LoadedRun run = load_run(config);
    std::vector<BoundsRow> rows;
    rows.reserve(config.models.size());
    for (const ModelSpec& model : config.models) {
        const ModelRun model_run = evaluate_model(run, config, model);
        const double limit_alpha = mean_over_shuffles(
            model_run,
            [](std::span<const SampleEvaluation> evals) { return rs_limit_alpha(evals); });
        const double limit_beta = mean_over_shuffles(
            model_run,
            [](std::span<const SampleEvaluation> evals) { return rs_limit_beta(evals); });

        // The limits must agree with RS at extreme finite weights.
        const double rs_big_alpha = mean_over_shuffles(
            model_run, [](std::span<const SampleEvaluation> evals) {
                return relevance_score_at(evals, RsParams{1e6, 1.0});
            });
        const double rs_big_beta = mean_over_shuffles(
            model_run, [](std::span<const SampleEvaluation> evals) {
                return relevance_score_at(evals, RsParams{1.0, 1e6});
            });
        if (std::abs(rs_big_alpha - limit_alpha) > 1e-3 ||
            std::abs(rs_big_beta - limit_beta) > 1e-3)
            throw InternalError("bounds: finite-weight RS disagrees with the limit value for "
                                "model " + model_run.model);

        rows.push_back(BoundsRow{model_run.model, limit_alpha, limit_beta});
    }
    return rows;
}

RandomControlResult run_random_control(const RunConfig& config) {
    LoadedRun run = load_run(config);
    run.arm = "real";

    RandomControlResult result;
    result.expected_random_ca = 100.0 / static_cast<double>(run.alphabet.size());
    result.real_reports = evaluate_loaded(run, config);

    LoadedRun randomized = run;
    randomized.arm = "randomized";
    randomized.samples = randomize_outputs(run.samples, run.alphabet,
                                           derive_seed(config.split.seed, "randomize-outputs"));
    result.randomized_reports = evaluate_loaded(randomized, config);
    return result;
}

namespace {

ordered_json sweep_row_json(const SweepRow& row) {
    ordered_json j;
    j["alpha"] = row.alpha;
    j["beta"] = row.beta;
    j["model"] = row.model;
    j["rs"] = row.rs;
    return j;
}

}  // namespace

std::string sweep_to_csv(std::span<const SweepRow> rows) {
    std::ostringstream out;
    out << "alpha,beta,model,rs\n";
    for (const SweepRow& row : rows) {
        out << format_number(row.alpha) << ',' << format_number(row.beta) << ',' << row.model
            << ',' << format_number(row.rs) << '\n';
    }
    return out.str();
}

std::string sweep_to_json(std::span<const SweepRow> rows) {
    ordered_json arr = ordered_json::array();
    for (const SweepRow& row : rows) arr.push_back(sweep_row_json(row));
    return arr.dump(2) + "\n";
}

std::string bounds_to_csv(std::span<const BoundsRow> rows) {
    std::ostringstream out;
    out << "model,rs_alpha_inf,rs_beta_inf\n";
    for (const BoundsRow& row : rows) {
        out << row.model << ',' << format_number(row.rs_alpha_inf) << ','
            << format_number(row.rs_beta_inf) << '\n';
    }
    return out.str();
}

std::string bounds_to_json(std::span<const BoundsRow> rows) {
    ordered_json arr = ordered_json::array();
    for (const BoundsRow& row : rows) {
        ordered_json j;
        j["model"] = row.model;
        j["rs_alpha_inf"] = row.rs_alpha_inf;
        j["rs_beta_inf"] = row.rs_beta_inf;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

std::string random_control_to_json(const RandomControlResult& result) {
    ordered_json j;
    j["expected_random_ca"] = result.expected_random_ca;
    const auto arm = [](std::span<const EvaluationReport> reports) {
        ordered_json arr = ordered_json::array();
        for (const EvaluationReport& r : reports) {
            arr.push_back(detail::report_to_json_value(r));
        }
        return arr;
    };
    j["real"] = arm(result.real_reports);
    j["randomized"] = arm(result.randomized_reports);
    return j.dump(2) + "\n";
}

std::string random_control_to_csv(const RandomControlResult& result) {
    std::vector<EvaluationReport> all = result.real_reports;
    all.insert(all.end(), result.randomized_reports.begin(), result.randomized_reports.end());
    return reports_to_csv(all);
}

}  // namespace relscore
