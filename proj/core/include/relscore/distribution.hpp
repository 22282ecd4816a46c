#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relscore/types.hpp"

namespace relscore {

/// Ordered categorical feature names plus the outcome column name.
/// Every feature is a categorical token; there is no numeric binning.
struct FeatureSchema {
    std::vector<std::string> features;
    std::string outcome_column;

    /// Feature names must be unique, non-empty, and distinct from the
    /// outcome column.
    void validate() const;

    std::size_t feature_index(std::string_view name) const;
};

/// One dataset row: a token per schema feature plus the observed outcome.
struct Sample {
    std::vector<std::string> values;
    OutcomeLabel outcome;
};

/// Sample values projected onto the retained (non-excluded) features, in
/// schema order. Two samples share a key iff they agree on every retained
/// feature. Excluding all features yields the single empty key, i.e. the
/// marginal outcome distribution.
struct ContextKey {
    std::vector<std::string> values;

    auto operator<=>(const ContextKey&) const = default;
};

std::string to_string(const ContextKey& key);

/// Validates an exclusion set against a schema once, then projects many
/// samples cheaply.
class ContextProjector {
public:
    ContextProjector(const FeatureSchema& schema, const std::set<std::string>& excluded);

    ContextKey operator()(const Sample& sample) const;

    std::size_t retained_count() const noexcept { return retained_.size(); }
    std::size_t feature_count() const noexcept { return feature_count_; }

private:
    std::vector<std::size_t> retained_;
    std::size_t feature_count_;
};

ContextKey reduce_context(const Sample& sample, const std::set<std::string>& excluded,
                          const FeatureSchema& schema);

/// Empirical outcome distribution for one context. Counts cover the whole
/// outcome alphabet (unobserved outcomes carry count 0), probabilities are
/// exact count ratios, and the mode is the lexicographically smallest label
/// among those of maximal probability.
class ConditionalDistribution {
public:
    ConditionalDistribution(ContextKey context, std::map<OutcomeLabel, std::int64_t> counts);

    /// 0 for labels outside the alphabet: the empirical frequency of an
    /// outcome never observed is zero.
    double probability(const OutcomeLabel& label) const;
    std::int64_t count(const OutcomeLabel& label) const;

    const OutcomeLabel& mode() const noexcept { return mode_; }
    double mode_probability() const;

    /// (p_h, p_p, p_a) for a predicted/actual pair drawn against this
    /// distribution.
    ProbabilityTriple probabilities_for(const OutcomeLabel& predicted,
                                        const OutcomeLabel& actual) const;

    const ContextKey& context() const noexcept { return context_; }
    const std::map<OutcomeLabel, std::int64_t>& counts() const noexcept { return counts_; }
    std::int64_t total() const noexcept { return total_; }
    int support_size() const noexcept { return support_; }

private:
    ContextKey context_;
    std::map<OutcomeLabel, std::int64_t> counts_;
    OutcomeLabel mode_;
    std::int64_t total_ = 0;
    int support_ = 0;
};

/// Behavior of DistributionTable::lookup for a context never seen when the
/// table was built.
enum class UnseenPolicy {
    Error,     // strict: throw DataError
    Uniform,   // uniform over the alphabet (default)
    Marginal,  // dataset-wide outcome distribution
};

enum class ProbabilitySource { FullDataset, TrainOnly };

std::string_view unseen_policy_name(UnseenPolicy p);
UnseenPolicy unseen_policy_from_name(std::string_view name);
std::string_view probability_source_name(ProbabilitySource s);
ProbabilitySource probability_source_from_name(std::string_view name);

/// Context -> conditional outcome distribution, plus the alphabet and the
/// marginal. Immutable once built; safe to share across threads.
class DistributionTable {
public:
    DistributionTable(std::map<ContextKey, ConditionalDistribution> entries,
                      std::vector<OutcomeLabel> alphabet, ConditionalDistribution marginal,
                      ConditionalDistribution uniform, std::int64_t total_count,
                      ProbabilitySource source);

    const ConditionalDistribution& lookup(const ContextKey& key, UnseenPolicy policy) const;

    /// nullptr when the key is absent.
    const ConditionalDistribution* find(const ContextKey& key) const;

    const std::vector<OutcomeLabel>& alphabet() const noexcept { return alphabet_; }
    const ConditionalDistribution& marginal() const noexcept { return marginal_; }
    const std::map<ContextKey, ConditionalDistribution>& entries() const noexcept {
        return entries_;
    }
    std::int64_t total_count() const noexcept { return total_count_; }
    ProbabilitySource source() const noexcept { return source_; }

private:
    std::map<ContextKey, ConditionalDistribution> entries_;
    std::vector<OutcomeLabel> alphabet_;
    ConditionalDistribution marginal_;
    ConditionalDistribution uniform_;
    std::int64_t total_count_;
    ProbabilitySource source_;
};

/// Sorted union of the outcomes observed in the dataset and any declared
/// extra labels.
std::vector<OutcomeLabel> collect_alphabet(std::span<const Sample> dataset,
                                           std::span<const OutcomeLabel> extra_labels = {});

/// Groups samples by reduced context and normalizes outcome counts into
/// probabilities. The alphabet is the union of observed outcomes and
/// `extra_labels`; declared-but-unobserved outcomes get probability 0 in
/// every context.
DistributionTable build_distribution_table(std::span<const Sample> dataset,
                                           const std::set<std::string>& excluded,
                                           const FeatureSchema& schema,
                                           std::span<const OutcomeLabel> extra_labels = {},
                                           ProbabilitySource source = ProbabilitySource::FullDataset);

}  // namespace relscore
