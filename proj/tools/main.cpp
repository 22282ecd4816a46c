// relscore: command-line driver for Relevance Score experiments.
//
// Subcommands: evaluate, sweep, bounds, random-control. Exit codes:
// 0 success, 1 configuration error, 2 data error, 3 internal invariant
// violation.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relscore/errors.hpp"
#include "relscore/experiments.hpp"

namespace {

using relscore::EvaluationReport;
using relscore::RunConfig;

struct CommonOptions {
    RunConfig config;
    std::string delimiter = ",";
    std::string prob_source = "full";
    std::string unseen = "uniform";
    std::vector<std::string> exclude;
    std::vector<std::string> labels;
    std::vector<std::string> baselines;
    std::vector<std::string> predict_files;
    std::string out;
    std::string format;
};

void add_common_options(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--dataset", o.config.dataset_path,
                    "Dataset file: delimited text, one header line, categorical tokens")
        ->required();
    cmd->add_option("--delimiter", o.delimiter, "Dataset field delimiter (default ',')");
    cmd->add_option("--outcome-column", o.config.read_options.outcome_column,
                    "Outcome column name (default: last header column)");
    cmd->add_option("--exclude", o.exclude,
                    "Features removed from the context key, e.g. the one driving output "
                    "randomness")
        ->delimiter(',');
    cmd->add_option("--labels", o.labels,
                    "Extra outcome labels to include in the alphabet even if unobserved")
        ->delimiter(',');
    cmd->add_option("--alpha", o.config.params.alpha, "Weight on d_hp (default 2)");
    cmd->add_option("--beta", o.config.params.beta, "Weight on d_pa (default 1)");
    cmd->add_option("--baseline", o.baselines,
                    "Baseline predictor: most-probable|uniform-random|marginal-random|one-rule "
                    "(repeatable)");
    cmd->add_option("--predict-file", o.predict_files,
                    "External predictions covering the whole dataset, format 'index,predicted' "
                    "(repeatable)");
    cmd->add_option("--train-fraction", o.config.split.train_fraction,
                    "Training fraction per shuffle (default 0.7)");
    cmd->add_option("--shuffles", o.config.split.shuffle_count,
                    "Number of shuffled train/test splits (default 10)");
    cmd->add_option("--seed", o.config.split.seed,
                    "Root seed for splits and stochastic baselines (default 0)");
    cmd->add_option("--prob-source", o.prob_source,
                    "Probability source for scoring: full|train (default full)");
    cmd->add_option("--unseen", o.unseen,
                    "Unseen-context policy: uniform|marginal|error (default uniform)");
    cmd->add_option("--tolerance", o.config.tolerance,
                    "Probability-equality tolerance for case labels (default 1e-9)");
    cmd->add_flag("--samples", o.config.include_samples,
                  "Embed per-sample evaluations in the report");
    cmd->add_option("--out", o.out, "Output file (default: stdout)");
    cmd->add_option("--format", o.format, "Output format: json|csv");
}

RunConfig finalize_config(CommonOptions& o) {
    if (o.delimiter.size() != 1)
        throw std::invalid_argument("--delimiter must be a single character");
    o.config.read_options.delimiter = o.delimiter[0];
    o.config.prob_source = relscore::probability_source_from_name(o.prob_source);
    o.config.unseen = relscore::unseen_policy_from_name(o.unseen);
    o.config.excluded = std::set<std::string>(o.exclude.begin(), o.exclude.end());
    o.config.declared_labels = o.labels;
    o.config.models.clear();
    for (const std::string& name : o.baselines) {
        relscore::ModelSpec model;
        model.source = relscore::ModelSpec::Source::Baseline;
        model.kind = relscore::predictor_kind_from_name(name);
        o.config.models.push_back(model);
    }
    for (const std::string& path : o.predict_files) {
        relscore::ModelSpec model;
        model.source = relscore::ModelSpec::Source::PredictionFile;
        model.prediction_path = path;
        o.config.models.push_back(model);
    }
    o.config.validate();
    return o.config;
}

relscore::ReportFormat parse_format(const std::string& text, relscore::ReportFormat fallback) {
    if (text.empty()) return fallback;
    if (text == "json") return relscore::ReportFormat::Json;
    if (text == "csv") return relscore::ReportFormat::Csv;
    throw std::invalid_argument("--format must be json or csv");
}

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw relscore::DataError("cannot write output file: " + out_path);
    out << payload;
    if (!out) throw relscore::DataError("failed while writing output file: " + out_path);
}

void print_comparison(std::ostream& os, std::span<const EvaluationReport> reports) {
    os << std::left << std::setw(28) << "model" << std::right << std::setw(16) << "CA"
       << std::setw(16) << "RS" << std::setw(16) << "RS(a->inf)" << std::setw(16)
       << "RS(b->inf)" << '\n';
    os << std::setprecision(10);
    for (const EvaluationReport& r : reports) {
        const auto it = r.provenance.find("model");
        os << std::left << std::setw(28) << (it == r.provenance.end() ? "?" : it->second)
           << std::right << std::setw(16) << r.ca << std::setw(16) << r.rs << std::setw(16)
           << r.rs_alpha_inf << std::setw(16) << r.rs_beta_inf << '\n';
    }
}

int cmd_evaluate(CommonOptions& o) {
    const RunConfig config = finalize_config(o);
    const std::vector<EvaluationReport> reports = relscore::run_evaluate(config);
    const auto format = parse_format(o.format, relscore::ReportFormat::Json);
    const std::string payload = format == relscore::ReportFormat::Json
                                    ? relscore::reports_to_json(reports)
                                    : relscore::reports_to_csv(reports);
    emit(payload, o.out);
    print_comparison(o.out.empty() ? std::cerr : std::cout, reports);
    return 0;
}

int cmd_sweep(CommonOptions& o, const std::string& pairs_text, bool include_limits) {
    const RunConfig config = finalize_config(o);
    relscore::SweepSpec sweep;
    sweep.include_limits = include_limits;
    if (!pairs_text.empty()) {
        sweep.pairs.clear();
        std::stringstream ss(pairs_text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("--pairs entries must look like 'alpha:beta', got '" +
                                            item + "'");
            relscore::RsParams p;
            try {
                p.alpha = std::stod(item.substr(0, colon));
                p.beta = std::stod(item.substr(colon + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("--pairs entry '" + item + "' is not numeric");
            }
            sweep.pairs.push_back(p);
        }
    }
    const std::vector<relscore::SweepRow> rows = relscore::run_sweep(config, sweep);
    const auto format = parse_format(o.format, relscore::ReportFormat::Csv);
    emit(format == relscore::ReportFormat::Csv ? relscore::sweep_to_csv(rows)
                                               : relscore::sweep_to_json(rows),
         o.out);
    return 0;
}

int cmd_bounds(CommonOptions& o) {
    const RunConfig config = finalize_config(o);
    const std::vector<relscore::BoundsRow> rows = relscore::run_bounds(config);
    const auto format = parse_format(o.format, relscore::ReportFormat::Csv);
    emit(format == relscore::ReportFormat::Csv ? relscore::bounds_to_csv(rows)
                                               : relscore::bounds_to_json(rows),
         o.out);
    return 0;
}

int cmd_random_control(CommonOptions& o) {
    const RunConfig config = finalize_config(o);
    const relscore::RandomControlResult result = relscore::run_random_control(config);
    const auto format = parse_format(o.format, relscore::ReportFormat::Json);
    emit(format == relscore::ReportFormat::Json ? relscore::random_control_to_json(result)
                                                : relscore::random_control_to_csv(result),
         o.out);
    std::ostream& os = o.out.empty() ? std::cerr : std::cout;
    os << std::setprecision(10) << "expected CA on randomized outputs (100/K): "
       << result.expected_random_ca << "\n\nreal outputs:\n";
    print_comparison(os, result.real_reports);
    os << "\nrandomized outputs:\n";
    print_comparison(os, result.randomized_reports);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relevance Score toolkit: evaluates classifiers on tasks where one observed "
                 "context admits several acceptable outcomes"};
    app.require_subcommand(1);

    CommonOptions evaluate_opts;
    CommonOptions sweep_opts;
    CommonOptions bounds_opts;
    CommonOptions random_opts;
    std::string pairs_text;
    bool no_limits = false;

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Score models with RS and CA over shuffled splits");
    add_common_options(evaluate, evaluate_opts);

    CLI::App* sweep =
        app.add_subcommand("sweep", "Recompute RS over a grid of (alpha, beta) pairs");
    add_common_options(sweep, sweep_opts);
    sweep->add_option("--pairs", pairs_text,
                      "alpha:beta pairs, e.g. \"2:1,1:1,1:2\" (default \"1:2,1:1,2:1\")");
    sweep->add_flag("--no-limits", no_limits,
                    "Skip the exact limit rows (alpha,beta) = (1,0) and (0,1)");

    CLI::App* bounds = app.add_subcommand(
        "bounds", "Limit RS values as alpha or beta dominates, per model");
    add_common_options(bounds, bounds_opts);

    CLI::App* random_control = app.add_subcommand(
        "random-control", "Evaluate real outputs against uniformly randomized outputs");
    add_common_options(random_control, random_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (evaluate->parsed()) return cmd_evaluate(evaluate_opts);
        if (sweep->parsed()) return cmd_sweep(sweep_opts, pairs_text, !no_limits);
        if (bounds->parsed()) return cmd_bounds(bounds_opts);
        if (random_control->parsed()) return cmd_random_control(random_opts);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const relscore::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
