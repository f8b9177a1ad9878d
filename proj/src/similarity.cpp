#include "pda/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pda {

MeasureSet clone_measures(const MeasureSet& measures)
{
    MeasureSet out;
    out.reserve(measures.size());
    for (const auto& m : measures) {
        out.push_back(m->clone());
    }
    return out;
}

AbsDifference::AbsDifference(std::size_t component, double scale)
    : component_(component)
    , scale_(1.0)
{
    set_scale(scale);
}

void AbsDifference::set_scale(double scale)
{
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("AbsDifference: scale must be positive");
    }
    scale_ = scale;
}

double AbsDifference::compare(const Sample& a, const Sample& b) const
{
    if (component_ >= a.size() || component_ >= b.size()) {
        throw std::out_of_range("AbsDifference: sample has no component " + std::to_string(component_));
    }
    return std::min(1.0, std::abs(a[component_] - b[component_]) / scale_);
}

std::unique_ptr<SimilarityMeasure> AbsDifference::clone() const { return std::make_unique<AbsDifference>(*this); }

nlohmann::json AbsDifference::describe() const
{
    return {{"id", id()}, {"component", component_}, {"scale", scale_}, {"normalization", "min(1, |a-b| / scale)"}};
}

IofDissimilarity::IofDissimilarity(std::size_t begin, std::size_t end, std::size_t reference_size)
    : begin_(begin)
    , end_(end)
    , reference_size_(reference_size)
    , counts_(end > begin ? end - begin : 0)
{
    if (end <= begin) {
        throw std::invalid_argument("IofDissimilarity: empty attribute range");
    }
    if (reference_size < 2) {
        throw std::invalid_argument("IofDissimilarity: reference size must be at least 2");
    }
}

namespace {
    long long category(const Sample& s, std::size_t index)
    {
        if (index >= s.size()) {
            throw std::out_of_range("IofDissimilarity: sample too short");
        }
        return std::llround(s[index]);
    }
} // namespace

std::size_t IofDissimilarity::frequency(std::size_t attribute, long long value) const
{
    const auto& table = counts_.at(attribute);
    auto it = table.find(value);
    return it == table.end() ? 0 : it->second;
}

double IofDissimilarity::compare(const Sample& a, const Sample& b) const
{
    double similarity = 0.0;
    for (std::size_t k = begin_; k < end_; ++k) {
        const long long va = category(a, k);
        const long long vb = category(b, k);
        if (va == vb) {
            similarity += 1.0;
            continue;
        }
        const auto fa = static_cast<double>(std::max<std::size_t>(1, frequency(k - begin_, va)));
        const auto fb = static_cast<double>(std::max<std::size_t>(1, frequency(k - begin_, vb)));
        similarity += 1.0 / (1.0 + std::log(fa) * std::log(fb));
    }
    similarity /= static_cast<double>(end_ - begin_);
    const double log_n = std::log(static_cast<double>(reference_size_));
    const double floor = 1.0 / (1.0 + log_n * log_n);
    return std::clamp((1.0 - similarity) / (1.0 - floor), 0.0, 1.0);
}

void IofDissimilarity::admit(const Sample& s)
{
    for (std::size_t k = begin_; k < end_; ++k) {
        ++counts_[k - begin_][category(s, k)];
    }
}

void IofDissimilarity::evict(const Sample& s)
{
    for (std::size_t k = begin_; k < end_; ++k) {
        auto& table = counts_[k - begin_];
        auto it = table.find(category(s, k));
        if (it == table.end() || it->second == 0) {
            throw std::logic_error("IofDissimilarity::evict: sample was never admitted");
        }
        if (--it->second == 0) {
            table.erase(it);
        }
    }
}

std::unique_ptr<SimilarityMeasure> IofDissimilarity::clone() const { return std::make_unique<IofDissimilarity>(*this); }

nlohmann::json IofDissimilarity::describe() const
{
    return {
        {"id", id()},
        {"begin", begin_},
        {"end", end_},
        {"reference_size", reference_size_},
        {"normalization", "(1 - S) / (1 - 1/(1 + log(N)^2)), S = mean IOF similarity, frequencies from current window"},
    };
}

MeasureRegistry::MeasureRegistry()
{
    add("abs_diff", [](const nlohmann::json& spec) {
        return std::make_unique<AbsDifference>(spec.at("component").get<std::size_t>(), spec.value("scale", 1.0));
    });
    add("iof", [](const nlohmann::json& spec) {
        return std::make_unique<IofDissimilarity>(spec.at("begin").get<std::size_t>(), spec.at("end").get<std::size_t>(),
                                                  spec.at("reference_size").get<std::size_t>());
    });
}

MeasureRegistry& MeasureRegistry::instance()
{
    static MeasureRegistry registry;
    return registry;
}

void MeasureRegistry::add(const std::string& id, Factory factory) { factories_[id] = std::move(factory); }

std::unique_ptr<SimilarityMeasure> MeasureRegistry::make(const nlohmann::json& spec) const
{
    const auto id = spec.at("id").get<std::string>();
    auto it = factories_.find(id);
    if (it == factories_.end()) {
        throw std::invalid_argument("unknown similarity measure '" + id + "'");
    }
    return it->second(spec);
}

} // namespace pda
