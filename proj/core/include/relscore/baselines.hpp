#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "relscore/distribution.hpp"

namespace relscore {

/// Shuffled train/test split protocol: `shuffle_count` independent shuffles
/// of the same dataset, each split at floor(train_fraction * m).
struct SplitSpec {
    double train_fraction = 0.7;
    int shuffle_count = 10;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Deterministic partition for one shuffle index: same (seed, shuffle_index)
/// always yields the same partition; train and test are disjoint and cover
/// the dataset. Throws DataError when either part would be empty.
std::pair<std::vector<Sample>, std::vector<Sample>> split(std::span<const Sample> dataset,
                                                          const SplitSpec& spec,
                                                          int shuffle_index);

enum class PredictorKind { MostProbable, UniformRandom, MarginalRandom, OneRule };

std::string_view predictor_kind_name(PredictorKind kind);
PredictorKind predictor_kind_from_name(std::string_view name);

/// A fitted single-output predictor. Stochastic kinds own their seeded
/// stream, so one instance is not safe for concurrent prediction; clone()
/// per worker instead (the clone continues the original's stream state).
class Predictor {
public:
    virtual ~Predictor() = default;

    virtual OutcomeLabel predict_one(const Sample& sample) = 0;
    virtual std::unique_ptr<Predictor> clone() const = 0;
    virtual PredictorKind kind() const noexcept = 0;

    std::vector<OutcomeLabel> predict(std::span<const Sample> test);
};

/// Fits a baseline on the training split.
///  - MostProbable: predicts the mode of the train-built conditional
///    distribution for the sample's context; unseen contexts fall back to
///    the train marginal mode.
///  - UniformRandom / MarginalRandom: seeded draws over the alphabet or the
///    train marginal.
///  - OneRule: the single retained feature whose per-value-mode rule has the
///    lowest training error; unseen values fall back to the global mode.
std::unique_ptr<Predictor> fit(PredictorKind kind, std::span<const Sample> train,
                               const std::set<std::string>& excluded,
                               const FeatureSchema& schema,
                               std::span<const OutcomeLabel> extra_labels = {},
                               std::uint64_t seed = 0);

/// Control transform: keeps every row's features and replaces its outcome
/// with an independent uniform draw over the alphabet. Deterministic per
/// seed.
std::vector<Sample> randomize_outputs(std::span<const Sample> dataset,
                                      std::span<const OutcomeLabel> alphabet,
                                      std::uint64_t seed);

}  // namespace relscore
