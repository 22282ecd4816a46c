#pragma once

#include <span>

#include "relscore/distribution.hpp"
#include "relscore/types.hpp"

namespace relscore {

/// Absolute probability distances between mode/predicted, predicted/actual
/// and mode/actual outcomes.
DistanceTriple distances(const ProbabilityTriple& probs);

/// Normalized weighted error (alpha * d_hp + beta * d_pa) / (alpha + beta),
/// in [0, 1]. Throws std::invalid_argument when the weights are invalid
/// (negative, or alpha + beta == 0).
double err_score(const DistanceTriple& d, const RsParams& params);

/// Qualitative relevance case for a prediction. Case1 on an exact match;
/// otherwise the probability configuration decides, with equality tested to
/// `tolerance`. Configurations outside the taxonomy (e.g. p_p == p_a on a
/// mismatch, or all three tied) map to CaseLabel::Other.
CaseLabel classify_case(const OutcomeLabel& predicted, const OutcomeLabel& actual,
                        const ProbabilityTriple& probs,
                        double tolerance = kProbabilityTolerance);

/// Scores one prediction against the conditional distribution of its
/// context: looks up the probability triple, derives distances and the case
/// label, and computes score = (1 - err) * 100. An exact match carries zero
/// error and scores 100 regardless of the probabilities.
SampleEvaluation score_sample(const OutcomeLabel& predicted, const OutcomeLabel& actual,
                              const ConditionalDistribution& dist, const RsParams& params,
                              double tolerance = kProbabilityTolerance);

/// Mean per-sample score, in [0, 100]. Rejects an empty set.
double relevance_score(std::span<const SampleEvaluation> evals);

/// Relevance score of the same evaluations under different weights,
/// recomputed from the stored distances (distances do not depend on the
/// weights, so sweeps reuse them).
double relevance_score_at(std::span<const SampleEvaluation> evals, const RsParams& params);

/// 100 * (exact matches) / k over paired label sequences.
double classification_accuracy(std::span<const OutcomeLabel> predicted,
                               std::span<const OutcomeLabel> actual);

/// Limit of the relevance score as alpha dominates: mismatches contribute
/// (1 - d_hp) * 100, matches contribute 100.
double rs_limit_alpha(std::span<const SampleEvaluation> evals);

/// Limit as beta dominates, with d_pa in place of d_hp.
double rs_limit_beta(std::span<const SampleEvaluation> evals);

}  // namespace relscore
