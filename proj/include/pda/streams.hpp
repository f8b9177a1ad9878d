#ifndef PDA_STREAMS_HPP
#define PDA_STREAMS_HPP

#include "pda/detector.hpp"
#include "pda/similarity.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pda {

using Rng = std::mt19937_64;

/// Deterministic RNG for a (seed, trial, purpose) triple.
[[nodiscard]] Rng make_rng(std::uint64_t seed, std::uint64_t trial = 0, std::uint64_t purpose = 0);

struct LabeledSample {
    Sample x;
    bool anomalous = false;
    /// Ground-truth criterion for anomalies that violate exactly one criterion.
    std::optional<CriterionLabel> criterion;
    std::size_t regime = 0;
};

struct StreamConfig {
    std::size_t length = 1500;
    /// Index of the first sample drawn from the changed distribution.
    std::size_t change_step = 750;
    double anomaly_probability = 0.05;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Labeled synthetic stream with a single trend change.
class StreamGenerator {
public:
    virtual ~StreamGenerator() = default;

    [[nodiscard]] virtual std::string id() const = 0;
    [[nodiscard]] virtual LabeledSample draw(std::size_t regime, bool anomalous, Rng& rng) const = 0;
    /// The two similarity measures the experiment pairs with this stream.
    [[nodiscard]] virtual MeasureSet make_measures(std::size_t window) const = 0;
    /// Called before the first sample of `regime` reaches a detector.
    virtual void enter_regime(std::size_t regime, Detector& detector) const;

    [[nodiscard]] std::vector<LabeledSample> generate(const StreamConfig& config, std::uint64_t trial = 0) const;
    [[nodiscard]] std::vector<LabeledSample> test_set(std::size_t regime, std::size_t nominal, std::size_t anomalous,
                                                      Rng& rng) const;
};

/// Nominal samples uniform on [0,s]^2, anomalies uniform on [0,1.1 s]^2 minus
/// [0,s]^2, with s = 1 before the change and s = 2 after. Criterion c_i is
/// |dx_i| / s, where s tracks the current nominal box.
class UniformStreamGenerator final : public StreamGenerator {
public:
    [[nodiscard]] std::string id() const override { return "uniform"; }
    [[nodiscard]] LabeledSample draw(std::size_t regime, bool anomalous, Rng& rng) const override;
    [[nodiscard]] MeasureSet make_measures(std::size_t window) const override;
    void enter_regime(std::size_t regime, Detector& detector) const override;

    [[nodiscard]] static double nominal_extent(std::size_t regime) { return regime == 0 ? 1.0 : 2.0; }
};

struct CategoricalModelConfig {
    std::size_t groups = 2;
    std::size_t attributes_per_group = 20;
    std::size_t min_alphabet = 6;
    std::size_t max_alphabet = 10;
    double bias = 5.0;
};

/// Two groups of categorical attributes. Each attribute gets fixed category
/// probabilities per distribution, drawn from Dirichlet(alpha) with
/// alpha_1 = bias before the change, alpha_2 = bias after, and all ones for
/// the anomalous distribution. An anomaly redraws one group, chosen with
/// probability 1/2, from the anomalous distribution. Values are coded 1..n.
class CategoricalStreamGenerator final : public StreamGenerator {
public:
    CategoricalStreamGenerator(std::uint64_t seed, CategoricalModelConfig model = {});

    [[nodiscard]] std::string id() const override { return "categorical"; }
    [[nodiscard]] LabeledSample draw(std::size_t regime, bool anomalous, Rng& rng) const override;
    [[nodiscard]] MeasureSet make_measures(std::size_t window) const override;

    [[nodiscard]] const CategoricalModelConfig& model() const noexcept { return model_; }
    [[nodiscard]] std::size_t alphabet_size(std::size_t attribute) const { return alphabet_.at(attribute); }

private:
    enum Distribution { nominal_before = 0, nominal_after = 1, anomalous_dist = 2 };
    [[nodiscard]] double draw_value(std::size_t attribute, Distribution dist, Rng& rng) const;

    CategoricalModelConfig model_;
    std::vector<std::size_t> alphabet_;
    // cumulative_[dist][attribute] = cumulative category probabilities
    std::vector<std::vector<std::vector<double>>> cumulative_;
};

[[nodiscard]] std::vector<LabeledSample> gen_uniform_stream(const StreamConfig& config);
[[nodiscard]] std::vector<LabeledSample> gen_categorical_stream(const StreamConfig& config,
                                                                const CategoricalModelConfig& model = {});

/// "uniform" or "categorical"; the categorical model is drawn from `seed`.
[[nodiscard]] std::unique_ptr<StreamGenerator> make_generator(const std::string& id, std::uint64_t seed);

} // namespace pda

#endif
