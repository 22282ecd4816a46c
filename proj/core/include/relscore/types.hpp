#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace relscore {

/// Absolute tolerance for probability-equality tests in the case taxonomy.
/// Empirical probabilities are exact count ratios, so any honest gap between
/// two of them is far larger than this.
inline constexpr double kProbabilityTolerance = 1e-9;

/// Categorical outcome label, one of the K possible classes of an
/// evaluation. Compared by exact text equality.
class OutcomeLabel {
public:
    explicit OutcomeLabel(std::string name);

    const std::string& str() const noexcept { return name_; }

    auto operator<=>(const OutcomeLabel&) const = default;

private:
    std::string name_;
};

std::ostream& operator<<(std::ostream& os, const OutcomeLabel& label);

/// Weights of the error score: alpha scales the mode-to-predicted distance,
/// beta the predicted-to-actual distance. Either may be zero (giving the
/// pure single-distance metrics) but not both.
struct RsParams {
    double alpha = 2.0;
    double beta = 1.0;

    /// Requires alpha >= 0, beta >= 0 and alpha + beta > 0.
    void validate() const;
};

/// Empirical probabilities of the mode (O_H), predicted (O_P) and actual
/// (O_A) outcomes under one conditional distribution. The mode is the most
/// probable outcome, so p_h >= p_p and p_h >= p_a by construction.
struct ProbabilityTriple {
    double p_h = 0.0;
    double p_p = 0.0;
    double p_a = 0.0;
};

/// Absolute probability differences between mode/predicted,
/// predicted/actual and mode/actual outcomes. Each lies in [0, 1] and
/// d_ha <= d_hp + d_pa. d_ha is reported for diagnostics only; the error
/// score uses d_hp and d_pa.
struct DistanceTriple {
    double d_hp = 0.0;
    double d_pa = 0.0;
    double d_ha = 0.0;
};

/// Qualitative relevance taxonomy. Case1 (exact match) down to Case5
/// (mode was the actual outcome but something else was predicted);
/// Other covers tie configurations the taxonomy does not enumerate,
/// e.g. p_p == p_a on a mismatch. Other is still scored by the error
/// formula, which is total.
enum class CaseLabel { Case1, Case2, Case3, Case4, Case5, Other };

inline constexpr CaseLabel kAllCases[] = {CaseLabel::Case1, CaseLabel::Case2,
                                          CaseLabel::Case3, CaseLabel::Case4,
                                          CaseLabel::Case5, CaseLabel::Other};

std::string_view case_name(CaseLabel c);         // "Case1" .. "CaseOther"
std::string_view case_description(CaseLabel c);  // "HighlyRelevant" .. "Unclassified"
CaseLabel case_from_name(std::string_view name);

/// Everything known about one scored test sample.
struct SampleEvaluation {
    OutcomeLabel predicted;
    OutcomeLabel actual;
    ProbabilityTriple probs;
    DistanceTriple distances;
    CaseLabel relevance_case = CaseLabel::Other;
    double err_score = 0.0;  // in [0, 1]; exactly 0 on a match
    double score = 0.0;      // (1 - err_score) * 100
};

}  // namespace relscore
