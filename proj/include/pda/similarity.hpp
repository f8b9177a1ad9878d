#ifndef PDA_SIMILARITY_HPP
#define PDA_SIMILARITY_HPP

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace pda {

/// One stream sample. Numeric features, or integer category codes stored as
/// doubles for categorical data.
using Sample = std::vector<double>;

/// A dissimilarity score c(a, b) in [0, 1]; lower means more alike.
///
/// Measures may keep state derived from the current window (admit/evict are
/// called as samples enter and leave it). compare() must be symmetric.
class SimilarityMeasure {
public:
    virtual ~SimilarityMeasure() = default;

    [[nodiscard]] virtual std::string id() const = 0;
    [[nodiscard]] virtual double compare(const Sample& a, const Sample& b) const = 0;
    [[nodiscard]] virtual std::unique_ptr<SimilarityMeasure> clone() const = 0;

    /// Parameters and normalisation, echoed into experiment metadata.
    [[nodiscard]] virtual nlohmann::json describe() const { return {{"id", id()}}; }

    virtual void admit(const Sample&) { }
    virtual void evict(const Sample&) { }
};

using MeasureSet = std::vector<std::unique_ptr<SimilarityMeasure>>;

[[nodiscard]] MeasureSet clone_measures(const MeasureSet& measures);

/// |a[c] - b[c]| / scale, clipped to 1.
class AbsDifference final : public SimilarityMeasure {
public:
    AbsDifference(std::size_t component, double scale = 1.0);

    [[nodiscard]] std::string id() const override { return "abs_diff"; }
    [[nodiscard]] double compare(const Sample& a, const Sample& b) const override;
    [[nodiscard]] std::unique_ptr<SimilarityMeasure> clone() const override;
    [[nodiscard]] nlohmann::json describe() const override;

    void set_scale(double scale);
    [[nodiscard]] double scale() const noexcept { return scale_; }

private:
    std::size_t component_;
    double scale_;
};

/// Inverse Occurrence Frequency dissimilarity over the categorical attributes
/// [begin, end) of a sample.
///
/// Per attribute, matching values score 1 and mismatches
/// 1 / (1 + log f(a) log f(b)), where f counts occurrences of the value among
/// the samples currently admitted (at least 1). S is the mean over the
/// attributes and the result is (1 - S) / (1 - S_min) with
/// S_min = 1 / (1 + log(N)^2), N = reference_size, clipped to [0, 1].
class IofDissimilarity final : public SimilarityMeasure {
public:
    IofDissimilarity(std::size_t begin, std::size_t end, std::size_t reference_size);

    [[nodiscard]] std::string id() const override { return "iof"; }
    [[nodiscard]] double compare(const Sample& a, const Sample& b) const override;
    [[nodiscard]] std::unique_ptr<SimilarityMeasure> clone() const override;
    [[nodiscard]] nlohmann::json describe() const override;

    void admit(const Sample& s) override;
    void evict(const Sample& s) override;

    [[nodiscard]] std::size_t frequency(std::size_t attribute, long long value) const;

private:
    std::size_t begin_;
    std::size_t end_;
    std::size_t reference_size_;
    std::vector<std::unordered_map<long long, std::size_t>> counts_;
};

/// Builds measures from JSON descriptions such as
/// {"id": "abs_diff", "component": 0, "scale": 1.0}.
class MeasureRegistry {
public:
    using Factory = std::function<std::unique_ptr<SimilarityMeasure>(const nlohmann::json&)>;

    /// Registry preloaded with "abs_diff" and "iof".
    static MeasureRegistry& instance();

    void add(const std::string& id, Factory factory);
    [[nodiscard]] bool contains(const std::string& id) const { return factories_.count(id) > 0; }
    [[nodiscard]] std::unique_ptr<SimilarityMeasure> make(const nlohmann::json& spec) const;

private:
    MeasureRegistry();
    std::map<std::string, Factory> factories_;
};

} // namespace pda

#endif
