#include "relscore/distribution.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "relscore/errors.hpp"

namespace relscore {

void FeatureSchema::validate() const {
    if (outcome_column.empty())
        throw std::invalid_argument("schema: outcome column name is empty");
    std::set<std::string_view> seen;
    for (const std::string& f : features) {
        if (f.empty()) throw std::invalid_argument("schema: feature name is empty");
        if (!seen.insert(f).second)
            throw std::invalid_argument("schema: duplicate feature name '" + f + "'");
        if (f == outcome_column)
            throw std::invalid_argument("schema: outcome column '" + f +
                                        "' listed among input features");
    }
}

std::size_t FeatureSchema::feature_index(std::string_view name) const {
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i] == name) return i;
    }
    throw std::invalid_argument("schema: unknown feature '" + std::string(name) + "'");
}

std::string to_string(const ContextKey& key) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.values.size(); ++i) {
        if (i > 0) out += ", ";
        out += key.values[i];
    }
    out += ")";
    return out;
}

ContextProjector::ContextProjector(const FeatureSchema& schema,
                                   const std::set<std::string>& excluded)
    : feature_count_(schema.features.size()) {
    schema.validate();
    for (const std::string& name : excluded) {
        schema.feature_index(name);  // throws on an unknown exclusion
    }
    for (std::size_t i = 0; i < schema.features.size(); ++i) {
        if (!excluded.contains(schema.features[i])) retained_.push_back(i);
    }
}

ContextKey ContextProjector::operator()(const Sample& sample) const {
    if (sample.values.size() != feature_count_)
        throw DataError("sample has " + std::to_string(sample.values.size()) +
                        " values, schema expects " + std::to_string(feature_count_));
    ContextKey key;
    key.values.reserve(retained_.size());
    for (std::size_t i : retained_) key.values.push_back(sample.values[i]);
    return key;
}

ContextKey reduce_context(const Sample& sample, const std::set<std::string>& excluded,
                          const FeatureSchema& schema) {
    return ContextProjector(schema, excluded)(sample);
}

namespace {

OutcomeLabel mode_of(const std::map<OutcomeLabel, std::int64_t>& counts) {
    if (counts.empty())
        throw InternalError("conditional distribution requires a non-empty alphabet");
    auto best = counts.begin();
    for (auto it = std::next(counts.begin()); it != counts.end(); ++it) {
        if (it->second > best->second) best = it;
    }
    // Map order is lexicographic, so the first maximal entry is the
    // lexicographically smallest tied label.
    return best->first;
}

}  // namespace

ConditionalDistribution::ConditionalDistribution(ContextKey context,
                                                 std::map<OutcomeLabel, std::int64_t> counts)
    : context_(std::move(context)), counts_(std::move(counts)), mode_(mode_of(counts_)) {
    for (const auto& [label, c] : counts_) {
        if (c < 0) throw InternalError("negative outcome count for '" + label.str() + "'");
        total_ += c;
        if (c > 0) ++support_;
    }
    if (total_ <= 0)
        throw InternalError("conditional distribution requires at least one observation");
}

double ConditionalDistribution::probability(const OutcomeLabel& label) const {
    const auto it = counts_.find(label);
    if (it == counts_.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total_);
}

std::int64_t ConditionalDistribution::count(const OutcomeLabel& label) const {
    const auto it = counts_.find(label);
    return it == counts_.end() ? 0 : it->second;
}

double ConditionalDistribution::mode_probability() const {
    return probability(mode_);
}

ProbabilityTriple ConditionalDistribution::probabilities_for(const OutcomeLabel& predicted,
                                                             const OutcomeLabel& actual) const {
    return {mode_probability(), probability(predicted), probability(actual)};
}

std::string_view unseen_policy_name(UnseenPolicy p) {
    switch (p) {
        case UnseenPolicy::Error: return "error";
        case UnseenPolicy::Uniform: return "uniform";
        case UnseenPolicy::Marginal: return "marginal";
    }
    throw std::invalid_argument("unknown unseen-context policy value");
}

UnseenPolicy unseen_policy_from_name(std::string_view name) {
    if (name == "error") return UnseenPolicy::Error;
    if (name == "uniform") return UnseenPolicy::Uniform;
    if (name == "marginal") return UnseenPolicy::Marginal;
    throw std::invalid_argument("unknown unseen-context policy '" + std::string(name) +
                                "' (expected error|uniform|marginal)");
}

std::string_view probability_source_name(ProbabilitySource s) {
    return s == ProbabilitySource::FullDataset ? "full" : "train";
}

ProbabilitySource probability_source_from_name(std::string_view name) {
    if (name == "full") return ProbabilitySource::FullDataset;
    if (name == "train") return ProbabilitySource::TrainOnly;
    throw std::invalid_argument("unknown probability source '" + std::string(name) +
                                "' (expected full|train)");
}

DistributionTable::DistributionTable(std::map<ContextKey, ConditionalDistribution> entries,
                                     std::vector<OutcomeLabel> alphabet,
                                     ConditionalDistribution marginal,
                                     ConditionalDistribution uniform, std::int64_t total_count,
                                     ProbabilitySource source)
    : entries_(std::move(entries)),
      alphabet_(std::move(alphabet)),
      marginal_(std::move(marginal)),
      uniform_(std::move(uniform)),
      total_count_(total_count),
      source_(source) {}

const ConditionalDistribution* DistributionTable::find(const ContextKey& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
}

const ConditionalDistribution& DistributionTable::lookup(const ContextKey& key,
                                                         UnseenPolicy policy) const {
    if (const ConditionalDistribution* hit = find(key)) return *hit;
    switch (policy) {
        case UnseenPolicy::Error:
            throw DataError("unseen context " + to_string(key));
        case UnseenPolicy::Uniform:
            return uniform_;
        case UnseenPolicy::Marginal:
            return marginal_;
    }
    throw std::invalid_argument("unknown unseen-context policy value");
}

std::vector<OutcomeLabel> collect_alphabet(std::span<const Sample> dataset,
                                           std::span<const OutcomeLabel> extra_labels) {
    std::set<OutcomeLabel> labels(extra_labels.begin(), extra_labels.end());
    for (const Sample& s : dataset) labels.insert(s.outcome);
    return {labels.begin(), labels.end()};
}

DistributionTable build_distribution_table(std::span<const Sample> dataset,
                                           const std::set<std::string>& excluded,
                                           const FeatureSchema& schema,
                                           std::span<const OutcomeLabel> extra_labels,
                                           ProbabilitySource source) {
    if (dataset.empty())
        throw DataError("cannot build a distribution table from an empty dataset");
    const ContextProjector project(schema, excluded);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        if (dataset[i].values.size() != schema.features.size())
            throw DataError("sample " + std::to_string(i) + " has " +
                            std::to_string(dataset[i].values.size()) +
                            " values, schema expects " +
                            std::to_string(schema.features.size()));
    }

    const std::vector<OutcomeLabel> alphabet = collect_alphabet(dataset, extra_labels);

    std::map<ContextKey, std::map<OutcomeLabel, std::int64_t>> groups;
    std::map<OutcomeLabel, std::int64_t> marginal_counts;
    for (const OutcomeLabel& label : alphabet) marginal_counts.emplace(label, 0);
    for (const Sample& s : dataset) {
        ++groups[project(s)][s.outcome];
        ++marginal_counts[s.outcome];
    }

    std::map<ContextKey, ConditionalDistribution> entries;
    for (auto& [key, counts] : groups) {
        for (const OutcomeLabel& label : alphabet) counts.try_emplace(label, 0);
        entries.emplace(key, ConditionalDistribution(key, std::move(counts)));
    }

    std::map<OutcomeLabel, std::int64_t> uniform_counts;
    for (const OutcomeLabel& label : alphabet) uniform_counts.emplace(label, 1);

    return DistributionTable(std::move(entries), alphabet,
                             ConditionalDistribution(ContextKey{}, std::move(marginal_counts)),
                             ConditionalDistribution(ContextKey{}, std::move(uniform_counts)),
                             static_cast<std::int64_t>(dataset.size()), source);
}

}  // namespace relscore
