#include "relscore/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "relscore/errors.hpp"
#include "relscore/rng.hpp"

namespace relscore {

void SplitSpec::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("split: train fraction must lie in (0, 1)");
    if (shuffle_count < 1)
        throw std::invalid_argument("split: shuffle count must be at least 1");
}

std::pair<std::vector<Sample>, std::vector<Sample>> split(std::span<const Sample> dataset,
                                                          const SplitSpec& spec,
                                                          int shuffle_index) {
    spec.validate();
    if (shuffle_index < 0 || shuffle_index >= spec.shuffle_count)
        throw std::invalid_argument("split: shuffle index " + std::to_string(shuffle_index) +
                                    " outside [0, " + std::to_string(spec.shuffle_count) + ")");
    const std::size_t m = dataset.size();
    const auto train_size = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(m)));
    if (train_size < 1 || train_size >= m)
        throw DataError("split: dataset of " + std::to_string(m) +
                        " rows cannot give non-empty train and test parts at fraction " +
                        std::to_string(spec.train_fraction));

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(spec.seed, "split", static_cast<std::uint64_t>(shuffle_index)));
    rng.shuffle(order);

    std::vector<Sample> train;
    std::vector<Sample> test;
    train.reserve(train_size);
    test.reserve(m - train_size);
    for (std::size_t i = 0; i < m; ++i) {
        (i < train_size ? train : test).push_back(dataset[order[i]]);
    }
    return {std::move(train), std::move(test)};
}

std::string_view predictor_kind_name(PredictorKind kind) {
    switch (kind) {
        case PredictorKind::MostProbable: return "most-probable";
        case PredictorKind::UniformRandom: return "uniform-random";
        case PredictorKind::MarginalRandom: return "marginal-random";
        case PredictorKind::OneRule: return "one-rule";
    }
    throw std::invalid_argument("unknown predictor kind value");
}

PredictorKind predictor_kind_from_name(std::string_view name) {
    if (name == "most-probable") return PredictorKind::MostProbable;
    if (name == "uniform-random") return PredictorKind::UniformRandom;
    if (name == "marginal-random") return PredictorKind::MarginalRandom;
    if (name == "one-rule") return PredictorKind::OneRule;
    throw std::invalid_argument(
        "unknown baseline '" + std::string(name) +
        "' (expected most-probable|uniform-random|marginal-random|one-rule)");
}

std::vector<OutcomeLabel> Predictor::predict(std::span<const Sample> test) {
    std::vector<OutcomeLabel> out;
    out.reserve(test.size());
    for (const Sample& s : test) out.push_back(predict_one(s));
    return out;
}

namespace {

OutcomeLabel mode_of_counts(const std::map<OutcomeLabel, std::int64_t>& counts) {
    auto best = counts.begin();
    for (auto it = std::next(counts.begin()); it != counts.end(); ++it) {
        if (it->second > best->second) best = it;
    }
    return best->first;
}

class MostProbablePredictor final : public Predictor {
public:
    MostProbablePredictor(DistributionTable table, ContextProjector project)
        : table_(std::move(table)), project_(project), fallback_(table_.marginal().mode()) {}

    OutcomeLabel predict_one(const Sample& sample) override {
        const ContextKey key = project_(sample);
        if (const ConditionalDistribution* dist = table_.find(key)) return dist->mode();
        return fallback_;
    }

    std::unique_ptr<Predictor> clone() const override {
        return std::make_unique<MostProbablePredictor>(*this);
    }

    PredictorKind kind() const noexcept override { return PredictorKind::MostProbable; }

private:
    DistributionTable table_;
    ContextProjector project_;
    OutcomeLabel fallback_;
};

class UniformRandomPredictor final : public Predictor {
public:
    UniformRandomPredictor(std::vector<OutcomeLabel> alphabet, std::uint64_t seed)
        : alphabet_(std::move(alphabet)), rng_(seed) {}

    OutcomeLabel predict_one(const Sample&) override {
        return alphabet_[rng_.bounded(alphabet_.size())];
    }

    std::unique_ptr<Predictor> clone() const override {
        return std::make_unique<UniformRandomPredictor>(*this);
    }

    PredictorKind kind() const noexcept override { return PredictorKind::UniformRandom; }

private:
    std::vector<OutcomeLabel> alphabet_;
    Rng rng_;
};

class MarginalRandomPredictor final : public Predictor {
public:
    MarginalRandomPredictor(std::vector<OutcomeLabel> alphabet,
                            std::vector<std::int64_t> cumulative, std::uint64_t seed)
        : alphabet_(std::move(alphabet)), cumulative_(std::move(cumulative)), rng_(seed) {}

    OutcomeLabel predict_one(const Sample&) override {
        const auto total = static_cast<std::uint64_t>(cumulative_.back());
        const auto draw = static_cast<std::int64_t>(rng_.bounded(total));
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), draw);
        return alphabet_[static_cast<std::size_t>(it - cumulative_.begin())];
    }

    std::unique_ptr<Predictor> clone() const override {
        return std::make_unique<MarginalRandomPredictor>(*this);
    }

    PredictorKind kind() const noexcept override { return PredictorKind::MarginalRandom; }

private:
    std::vector<OutcomeLabel> alphabet_;
    std::vector<std::int64_t> cumulative_;  // inclusive prefix sums of marginal counts
    Rng rng_;
};

class OneRulePredictor final : public Predictor {
public:
    OneRulePredictor(std::optional<std::size_t> feature, std::map<std::string, OutcomeLabel> rule,
                     OutcomeLabel fallback, std::size_t feature_count)
        : feature_(feature),
          rule_(std::move(rule)),
          fallback_(std::move(fallback)),
          feature_count_(feature_count) {}

    OutcomeLabel predict_one(const Sample& sample) override {
        if (sample.values.size() != feature_count_)
            throw DataError("sample has " + std::to_string(sample.values.size()) +
                            " values, schema expects " + std::to_string(feature_count_));
        if (!feature_.has_value()) return fallback_;
        const auto it = rule_.find(sample.values[*feature_]);
        return it == rule_.end() ? fallback_ : it->second;
    }

    std::unique_ptr<Predictor> clone() const override {
        return std::make_unique<OneRulePredictor>(*this);
    }

    PredictorKind kind() const noexcept override { return PredictorKind::OneRule; }

private:
    std::optional<std::size_t> feature_;  // schema index; empty means constant rule
    std::map<std::string, OutcomeLabel> rule_;
    OutcomeLabel fallback_;
    std::size_t feature_count_;
};

std::unique_ptr<Predictor> fit_one_rule(std::span<const Sample> train,
                                        const std::set<std::string>& excluded,
                                        const FeatureSchema& schema) {
    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < schema.features.size(); ++i) {
        if (!excluded.contains(schema.features[i])) retained.push_back(i);
    }

    std::map<OutcomeLabel, std::int64_t> marginal;
    for (const Sample& s : train) ++marginal[s.outcome];
    OutcomeLabel global_mode = mode_of_counts(marginal);

    if (retained.empty()) {
        // Every feature excluded: the best single-feature rule degenerates to
        // the constant global-mode rule.
        return std::make_unique<OneRulePredictor>(std::nullopt,
                                                  std::map<std::string, OutcomeLabel>{},
                                                  std::move(global_mode),
                                                  schema.features.size());
    }

    std::optional<std::size_t> best_feature;
    std::map<std::string, OutcomeLabel> best_rule;
    std::int64_t best_errors = 0;
    for (std::size_t idx : retained) {
        std::map<std::string, std::map<OutcomeLabel, std::int64_t>> per_value;
        for (const Sample& s : train) ++per_value[s.values[idx]][s.outcome];
        std::map<std::string, OutcomeLabel> rule;
        std::int64_t errors = 0;
        for (const auto& [value, counts] : per_value) {
            const OutcomeLabel mode = mode_of_counts(counts);
            std::int64_t value_total = 0;
            for (const auto& [label, c] : counts) {
                (void)label;
                value_total += c;
            }
            errors += value_total - counts.at(mode);
            rule.emplace(value, mode);
        }
        if (!best_feature.has_value() || errors < best_errors) {
            best_feature = idx;
            best_rule = std::move(rule);
            best_errors = errors;
        }
    }
    return std::make_unique<OneRulePredictor>(best_feature, std::move(best_rule),
                                              std::move(global_mode), schema.features.size());
}

}  // namespace

std::unique_ptr<Predictor> fit(PredictorKind kind, std::span<const Sample> train,
                               const std::set<std::string>& excluded,
                               const FeatureSchema& schema,
                               std::span<const OutcomeLabel> extra_labels, std::uint64_t seed) {
    if (train.empty()) throw DataError("fit: empty training set");
    schema.validate();
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (train[i].values.size() != schema.features.size())
            throw DataError("training sample " + std::to_string(i) + " has " +
                            std::to_string(train[i].values.size()) +
                            " values, schema expects " +
                            std::to_string(schema.features.size()));
    }

    switch (kind) {
        case PredictorKind::MostProbable: {
            DistributionTable table = build_distribution_table(
                train, excluded, schema, extra_labels, ProbabilitySource::TrainOnly);
            return std::make_unique<MostProbablePredictor>(
                std::move(table), ContextProjector(schema, excluded));
        }
        case PredictorKind::UniformRandom: {
            return std::make_unique<UniformRandomPredictor>(
                collect_alphabet(train, extra_labels),
                derive_seed(seed, "uniform-random"));
        }
        case PredictorKind::MarginalRandom: {
            std::vector<OutcomeLabel> alphabet = collect_alphabet(train, extra_labels);
            std::map<OutcomeLabel, std::int64_t> counts;
            for (const OutcomeLabel& label : alphabet) counts.emplace(label, 0);
            for (const Sample& s : train) ++counts.at(s.outcome);
            std::vector<std::int64_t> cumulative;
            cumulative.reserve(alphabet.size());
            std::int64_t running = 0;
            for (const OutcomeLabel& label : alphabet) {
                running += counts.at(label);
                cumulative.push_back(running);
            }
            return std::make_unique<MarginalRandomPredictor>(
                std::move(alphabet), std::move(cumulative),
                derive_seed(seed, "marginal-random"));
        }
        case PredictorKind::OneRule:
            return fit_one_rule(train, excluded, schema);
    }
    throw std::invalid_argument("unknown predictor kind value");
}

std::vector<Sample> randomize_outputs(std::span<const Sample> dataset,
                                      std::span<const OutcomeLabel> alphabet,
                                      std::uint64_t seed) {
    if (alphabet.empty())
        throw std::invalid_argument("randomize_outputs: alphabet must be non-empty");
    Rng rng(seed);
    std::vector<Sample> out;
    out.reserve(dataset.size());
    for (const Sample& s : dataset) {
        out.push_back(Sample{s.values, alphabet[rng.bounded(alphabet.size())]});
    }
    return out;
}

}  // namespace relscore
