#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "relscore/errors.hpp"
#include "relscore/experiments.hpp"
#include "support/temp_files.hpp"

using namespace relscore;
using relscore_test::TempDir;

namespace {

ModelSpec baseline(PredictorKind kind) {
    ModelSpec m;
    m.source = ModelSpec::Source::Baseline;
    m.kind = kind;
    return m;
}

ModelSpec prediction_file(const std::filesystem::path& path) {
    ModelSpec m;
    m.source = ModelSpec::Source::PredictionFile;
    m.prediction_path = path.string();
    return m;
}

// Five rows sharing one context; outcome counts give probabilities
// {LA: 0.4, LB: 0.4, LC: 0.2}.
const char* kFiveRowDataset = "ctx,preset\nc0,LA\nc0,LB\nc0,LC\nc0,LA\nc0,LB\n";
const char* kFiveRowPredictions = "index,predicted\n0,LA\n1,LC\n2,LA\n3,LB\n4,LB\n";

// Each context maps to exactly one outcome.
std::string deterministic_dataset() {
    std::string text = "f,y\n";
    for (int i = 0; i < 12; ++i) text += "a,L1\n";
    for (int i = 0; i < 12; ++i) text += "b,L2\n";
    for (int i = 0; i < 12; ++i) text += "c,L3\n";
    return text;
}

}  // namespace

TEST_CASE("run config validation") {
    RunConfig config;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // no dataset, no models

    config.dataset_path = "x.csv";
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // no models

    config.models.push_back(prediction_file("p.csv"));
    config.prob_source = ProbabilitySource::TrainOnly;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // train probs + file model

    config.prob_source = ProbabilitySource::FullDataset;
    CHECK_NOTHROW(config.validate());
}

TEST_CASE("evaluate on a context-deterministic dataset is perfect") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("det.csv", deterministic_dataset());

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 3, 5};
    config.models.push_back(baseline(PredictorKind::MostProbable));

    const auto reports = run_evaluate(config);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].ca == 100.0);
    CHECK(reports[0].rs == 100.0);
    CHECK(reports[0].case_histogram.at(CaseLabel::Case1) == 33);  // 3 shuffles x 11 test rows
}

TEST_CASE("evaluate replays the worked five-row comparison") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("five.csv", kFiveRowDataset);
    const auto predictions = dir.write("five_pred.csv", kFiveRowPredictions);

    RunConfig config;
    config.dataset_path = dataset.string();
    config.params = RsParams{2.0, 1.0};
    config.models.push_back(prediction_file(predictions));
    config.include_samples = true;

    const auto reports = run_evaluate(config);
    REQUIRE(reports.size() == 1);
    const EvaluationReport& r = reports[0];
    CHECK(r.ca == 40.0);
    // Scores 100, 80, 93.33..., 100, 100 -> mean 284/3.
    CHECK(std::abs(r.rs - 284.0 / 3.0) < 1e-9);
    CHECK(r.case_histogram.at(CaseLabel::Case1) == 2);
    CHECK(r.case_histogram.at(CaseLabel::Case2) == 1);
    CHECK(r.case_histogram.at(CaseLabel::Case5) == 1);
    CHECK(r.case_histogram.at(CaseLabel::Other) == 1);
    REQUIRE(r.per_sample.has_value());
    CHECK(r.per_sample->size() == 5);
    CHECK((*r.per_sample)[1].score == doctest::Approx(80.0).epsilon(1e-12));
    CHECK(r.provenance.at("evaluation_split") == "full-dataset");
    CHECK_NOTHROW(r.validate());
}

TEST_CASE("a single-sample exact-match test set reports 100/100") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("tiny.csv", "f,y\na,L1\na,L1\na,L1\n");

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 1, 3};
    config.models.push_back(baseline(PredictorKind::MostProbable));

    const auto reports = run_evaluate(config);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].ca == 100.0);
    CHECK(reports[0].rs == 100.0);
    CHECK(reports[0].case_histogram.at(CaseLabel::Case1) == 1);
}

TEST_CASE("shuffle averaging: reported rs is the mean of per-shuffle values") {
    TempDir dir("relscore-exp");
    // Noisy contexts so per-shuffle values differ.
    std::string text = "f,y\n";
    const char* outcomes[] = {"L1", "L2", "L1", "L1", "L3", "L2"};
    for (int i = 0; i < 30; ++i) {
        text += std::string("c") + std::to_string(i % 3) + "," + outcomes[i % 6] + "\n";
    }
    const auto dataset = dir.write("noisy.csv", text);

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 4, 9};
    config.models.push_back(baseline(PredictorKind::MostProbable));
    config.include_samples = true;

    const auto reports = run_evaluate(config);
    REQUIRE(reports.size() == 1);
    const EvaluationReport& r = reports[0];
    // 4 shuffles x 9 test rows each.
    REQUIRE(r.per_sample->size() == 36);
    double sum = 0.0;
    for (const SampleEvaluation& e : *r.per_sample) sum += e.score;
    CHECK(std::abs(r.rs - sum / 36.0) < 1e-9);
    CHECK_NOTHROW(r.validate());
}

TEST_CASE("evaluate is deterministic for a fixed config") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("det.csv", deterministic_dataset());

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 3, 21};
    config.models.push_back(baseline(PredictorKind::UniformRandom));
    config.models.push_back(baseline(PredictorKind::MostProbable));

    const auto a = run_evaluate(config);
    const auto b = run_evaluate(config);
    CHECK(reports_to_json(a) == reports_to_json(b));
}

TEST_CASE("sweep of an all-match model is 100 at every pair") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("det.csv", deterministic_dataset());

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 2, 5};
    config.models.push_back(baseline(PredictorKind::MostProbable));

    const auto rows = run_sweep(config, SweepSpec{});
    REQUIRE(rows.size() == 5);  // three default pairs plus the two limit rows
    for (const SweepRow& row : rows) CHECK(row.rs == 100.0);
}

TEST_CASE("train-only probabilities are supported and flagged") {
    TempDir dir("relscore-exp");
    std::string text = "f,y\n";
    const char* outcomes[] = {"L1", "L2", "L1", "L1", "L3", "L2"};
    for (int i = 0; i < 30; ++i) {
        text += std::string("c") + std::to_string(i % 3) + "," + outcomes[i % 6] + "\n";
    }
    const auto dataset = dir.write("noisy.csv", text);

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 3, 11};
    config.prob_source = ProbabilitySource::TrainOnly;
    config.models.push_back(baseline(PredictorKind::MostProbable));
    config.include_samples = true;

    const auto reports = run_evaluate(config);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].provenance.at("prob_source") == "train");
    CHECK(reports[0].rs >= reports[0].ca - 1e-9);
    CHECK_NOTHROW(reports[0].validate());
}

TEST_CASE("sweep is constant when the mismatch distances are equal") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("five.csv", kFiveRowDataset);
    // Row 0 (actual LA) mispredicted as LC: d_hp = d_pa = 0.2; others match.
    const auto predictions =
        dir.write("pred.csv", "index,predicted\n0,LC\n1,LB\n2,LC\n3,LA\n4,LB\n");

    RunConfig config;
    config.dataset_path = dataset.string();
    config.models.push_back(prediction_file(predictions));

    SweepSpec sweep;
    sweep.pairs = {{2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {5.0, 0.25}};
    sweep.include_limits = true;
    const auto rows = run_sweep(config, sweep);
    REQUIRE(rows.size() == 6);
    for (const SweepRow& row : rows) {
        // One mismatch with err 0.2 among five rows: RS = (4*100 + 80) / 5.
        CHECK(std::abs(row.rs - 96.0) < 1e-9);
    }
}

TEST_CASE("sweep moves toward the smaller distance as beta grows") {
    TempDir dir("relscore-exp");
    // One context, counts {A:5, B:2, C:1, D:2} over 10 rows.
    std::string text = "f,y\n";
    for (int i = 0; i < 5; ++i) text += "c,A\n";
    for (int i = 0; i < 2; ++i) text += "c,B\n";
    text += "c,C\n";
    for (int i = 0; i < 2; ++i) text += "c,D\n";
    const auto dataset = dir.write("skew.csv", text);
    // Mispredict the C row (index 7) as B: p_h=0.5, p_p=0.2, p_a=0.1, so
    // d_hp=0.3, d_pa=0.1. All other rows match.
    std::string preds = "index,predicted\n";
    const char* actual[] = {"A", "A", "A", "A", "A", "B", "B", "C", "D", "D"};
    for (int i = 0; i < 10; ++i) {
        preds += std::to_string(i) + "," + (i == 7 ? "B" : actual[i]) + "\n";
    }
    const auto predictions = dir.write("pred.csv", preds);

    RunConfig config;
    config.dataset_path = dataset.string();
    config.models.push_back(prediction_file(predictions));

    SweepSpec sweep;
    sweep.pairs = {{2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}};
    sweep.include_limits = false;
    const auto rows = run_sweep(config, sweep);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].rs < rows[1].rs);
    CHECK(rows[1].rs < rows[2].rs);

    // The worked errors: (2*0.3 + 0.1)/3, (0.3 + 0.1)/2, (0.3 + 0.2)/3.
    CHECK(std::abs(rows[0].rs - (900.0 + (1.0 - 0.7 / 3.0) * 100.0) / 10.0) < 1e-9);
    CHECK(std::abs(rows[1].rs - (900.0 + 80.0) / 10.0) < 1e-9);
    CHECK(std::abs(rows[2].rs - (900.0 + (1.0 - 0.5 / 3.0) * 100.0) / 10.0) < 1e-9);
}

TEST_CASE("bounds match the limit formulas and bracket swept values") {
    TempDir dir("relscore-exp");
    std::string text = "f,y\n";
    for (int i = 0; i < 4; ++i) text += "c,A\n";
    for (int i = 0; i < 2; ++i) text += "c,B\n";
    text += "c,C\n";
    for (int i = 0; i < 3; ++i) text += "c,D\n";
    const auto dataset = dir.write("skew.csv", text);
    // Mispredict the C row (index 6) as B: p_h=0.4, p_p=0.2, p_a=0.1, so
    // d_hp=0.2, d_pa=0.1 -> per-sample limits 80 and 90.
    std::string preds = "index,predicted\n";
    const char* actual[] = {"A", "A", "A", "A", "B", "B", "C", "D", "D", "D"};
    for (int i = 0; i < 10; ++i) {
        preds += std::to_string(i) + "," + (i == 6 ? "B" : actual[i]) + "\n";
    }
    const auto predictions = dir.write("pred.csv", preds);

    RunConfig config;
    config.dataset_path = dataset.string();
    config.models.push_back(prediction_file(predictions));

    const auto bounds = run_bounds(config);
    REQUIRE(bounds.size() == 1);
    CHECK(std::abs(bounds[0].rs_alpha_inf - 98.0) < 1e-9);  // (9*100 + 80) / 10
    CHECK(std::abs(bounds[0].rs_beta_inf - 99.0) < 1e-9);   // (9*100 + 90) / 10

    SweepSpec sweep;  // default pairs plus exact limit rows
    const auto rows = run_sweep(config, sweep);
    const double lo = std::min(bounds[0].rs_alpha_inf, bounds[0].rs_beta_inf);
    const double hi = std::max(bounds[0].rs_alpha_inf, bounds[0].rs_beta_inf);
    for (const SweepRow& row : rows) {
        CHECK(row.rs >= lo - 1e-9);
        CHECK(row.rs <= hi + 1e-9);
    }
    // The exact limit rows equal the bounds bit-for-bit up to summation.
    CHECK(std::abs(rows[3].rs - bounds[0].rs_alpha_inf) < 1e-12);  // (1, 0)
    CHECK(std::abs(rows[4].rs - bounds[0].rs_beta_inf) < 1e-12);   // (0, 1)
}

TEST_CASE("bounds of an all-match model are (100, 100)") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("det.csv", deterministic_dataset());

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 2, 3};
    config.models.push_back(baseline(PredictorKind::MostProbable));

    const auto bounds = run_bounds(config);
    REQUIRE(bounds.size() == 1);
    CHECK(bounds[0].rs_alpha_inf == 100.0);
    CHECK(bounds[0].rs_beta_inf == 100.0);
}

TEST_CASE("random control separates structured from randomized outputs") {
    TempDir dir("relscore-exp");
    // Strongly structured dataset: context determines the outcome.
    std::string text = "f,y\n";
    for (int i = 0; i < 500; ++i) {
        const int c = i % 4;
        text += "c" + std::to_string(c) + ",L" + std::to_string(c + 1) + "\n";
    }
    const auto dataset = dir.write("structured.csv", text);

    RunConfig config;
    config.dataset_path = dataset.string();
    config.split = SplitSpec{0.7, 2, 17};
    config.models.push_back(baseline(PredictorKind::MostProbable));

    const auto result = run_random_control(config);
    REQUIRE(result.real_reports.size() == 1);
    REQUIRE(result.randomized_reports.size() == 1);
    CHECK(result.expected_random_ca == 25.0);

    const EvaluationReport& real = result.real_reports[0];
    const EvaluationReport& randomized = result.randomized_reports[0];
    CHECK(real.ca == 100.0);
    CHECK(real.rs == 100.0);
    CHECK(real.provenance.at("arm") == "real");
    CHECK(randomized.provenance.at("arm") == "randomized");

    // 150 test rows per shuffle: CA within a few standard errors of 25.
    CHECK(std::abs(randomized.ca - 25.0) < 10.0);
    CHECK(randomized.rs >= randomized.ca - 1e-9);
    CHECK(real.rs > randomized.rs);
}

TEST_CASE("sweep and bounds emitters are well-formed") {
    const std::vector<SweepRow> sweep_rows = {{"most-probable", 2.0, 1.0, 96.5}};
    const std::string csv = sweep_to_csv(sweep_rows);
    CHECK(csv.find("alpha,beta,model,rs\n") == 0);
    CHECK(csv.find("2,1,most-probable,96.5") != std::string::npos);
    CHECK(sweep_to_json(sweep_rows).find("\"rs\": 96.5") != std::string::npos);

    const std::vector<BoundsRow> bounds_rows = {{"one-rule", 80.25, 90.5}};
    CHECK(bounds_to_csv(bounds_rows).find("model,rs_alpha_inf,rs_beta_inf\n") == 0);
    CHECK(bounds_to_json(bounds_rows).find("\"rs_beta_inf\": 90.5") != std::string::npos);
}

TEST_CASE("prediction files must cover the dataset") {
    TempDir dir("relscore-exp");
    const auto dataset = dir.write("five.csv", kFiveRowDataset);
    const auto short_preds = dir.write("short.csv", "index,predicted\n0,LA\n1,LB\n");

    RunConfig config;
    config.dataset_path = dataset.string();
    config.models.push_back(prediction_file(short_preds));
    CHECK_THROWS_AS(run_evaluate(config), DataError);
}
