#include "relscore/metric.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "relscore/numeric.hpp"

namespace relscore {

DistanceTriple distances(const ProbabilityTriple& probs) {
    return {std::abs(probs.p_h - probs.p_p), std::abs(probs.p_p - probs.p_a),
            std::abs(probs.p_h - probs.p_a)};
}

double err_score(const DistanceTriple& d, const RsParams& params) {
    params.validate();
    return (params.alpha * d.d_hp + params.beta * d.d_pa) / (params.alpha + params.beta);
}

CaseLabel classify_case(const OutcomeLabel& predicted, const OutcomeLabel& actual,
                        const ProbabilityTriple& probs, double tolerance) {
    if (tolerance < 0.0)
        throw std::invalid_argument("classify_case: tolerance must be non-negative");
    if (predicted == actual) return CaseLabel::Case1;

    const auto eq = [tolerance](double a, double b) { return std::abs(a - b) <= tolerance; };
    const auto gt = [tolerance](double a, double b) { return a - b > tolerance; };

    if (eq(probs.p_h, probs.p_p) && gt(probs.p_p, probs.p_a)) return CaseLabel::Case2;
    if (gt(probs.p_h, probs.p_p) && gt(probs.p_p, probs.p_a)) return CaseLabel::Case3;
    if (gt(probs.p_h, probs.p_a) && gt(probs.p_a, probs.p_p)) return CaseLabel::Case4;
    if (eq(probs.p_h, probs.p_a) && gt(probs.p_a, probs.p_p)) return CaseLabel::Case5;
    return CaseLabel::Other;  // tie configurations the taxonomy omits
}

SampleEvaluation score_sample(const OutcomeLabel& predicted, const OutcomeLabel& actual,
                              const ConditionalDistribution& dist, const RsParams& params,
                              double tolerance) {
    params.validate();
    const ProbabilityTriple probs = dist.probabilities_for(predicted, actual);
    const DistanceTriple d = distances(probs);
    const CaseLabel relevance_case = classify_case(predicted, actual, probs, tolerance);
    // A match carries no error regardless of the probabilities; the error
    // formula applies to mismatches only.
    const double err = predicted == actual ? 0.0 : err_score(d, params);
    return SampleEvaluation{predicted, actual, probs, d, relevance_case, err,
                            (1.0 - err) * 100.0};
}

double relevance_score(std::span<const SampleEvaluation> evals) {
    if (evals.empty()) throw std::invalid_argument("relevance_score: empty evaluation set");
    CompensatedSum sum;
    for (const SampleEvaluation& e : evals) sum.add(e.score);
    return sum.value() / static_cast<double>(evals.size());
}

double relevance_score_at(std::span<const SampleEvaluation> evals, const RsParams& params) {
    if (evals.empty()) throw std::invalid_argument("relevance_score_at: empty evaluation set");
    params.validate();
    CompensatedSum sum;
    for (const SampleEvaluation& e : evals) {
        sum.add(e.predicted == e.actual ? 100.0
                                        : (1.0 - err_score(e.distances, params)) * 100.0);
    }
    return sum.value() / static_cast<double>(evals.size());
}

double classification_accuracy(std::span<const OutcomeLabel> predicted,
                               std::span<const OutcomeLabel> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("classification_accuracy: sequence length mismatch");
    if (predicted.empty())
        throw std::invalid_argument("classification_accuracy: empty input");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i] == actual[i]) ++matches;
    }
    return 100.0 * static_cast<double>(matches) / static_cast<double>(predicted.size());
}

namespace {

double limit_mean(std::span<const SampleEvaluation> evals, double DistanceTriple::*dist,
                  const char* op) {
    if (evals.empty()) throw std::invalid_argument(std::string(op) + ": empty evaluation set");
    CompensatedSum sum;
    for (const SampleEvaluation& e : evals) {
        sum.add(e.predicted == e.actual ? 100.0 : (1.0 - e.distances.*dist) * 100.0);
    }
    return sum.value() / static_cast<double>(evals.size());
}

}  // namespace

double rs_limit_alpha(std::span<const SampleEvaluation> evals) {
    return limit_mean(evals, &DistanceTriple::d_hp, "rs_limit_alpha");
}

double rs_limit_beta(std::span<const SampleEvaluation> evals) {
    return limit_mean(evals, &DistanceTriple::d_pa, "rs_limit_beta");
}

}  // namespace relscore
