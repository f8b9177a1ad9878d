#include "pda/streams.hpp"

#include <algorithm>
#include <stdexcept>

namespace pda {

Rng make_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t purpose)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(purpose)};
    return Rng(seq);
}

void StreamConfig::validate() const
{
    if (change_step > length) {
        throw std::invalid_argument("StreamConfig: change step lies beyond the stream");
    }
    if (anomaly_probability < 0.0 || anomaly_probability > 1.0) {
        throw std::invalid_argument("StreamConfig: anomaly probability outside [0, 1]");
    }
}

void StreamGenerator::enter_regime(std::size_t, Detector&) const { }

std::vector<LabeledSample> StreamGenerator::generate(const StreamConfig& config, std::uint64_t trial) const
{
    config.validate();
    Rng rng = make_rng(config.seed, trial, 1);
    std::bernoulli_distribution is_anomaly(config.anomaly_probability);
    std::vector<LabeledSample> stream;
    stream.reserve(config.length);
    for (std::size_t t = 0; t < config.length; ++t) {
        const std::size_t regime = t < config.change_step ? 0 : 1;
        const bool anomalous = is_anomaly(rng);
        stream.push_back(draw(regime, anomalous, rng));
    }
    return stream;
}

std::vector<LabeledSample> StreamGenerator::test_set(std::size_t regime, std::size_t nominal, std::size_t anomalous,
                                                     Rng& rng) const
{
    std::vector<LabeledSample> out;
    out.reserve(nominal + anomalous);
    for (std::size_t i = 0; i < nominal; ++i) {
        out.push_back(draw(regime, false, rng));
    }
    for (std::size_t i = 0; i < anomalous; ++i) {
        out.push_back(draw(regime, true, rng));
    }
    return out;
}

LabeledSample UniformStreamGenerator::draw(std::size_t regime, bool anomalous, Rng& rng) const
{
    const double side = nominal_extent(regime);
    LabeledSample s;
    s.regime = regime;
    s.anomalous = anomalous;
    if (!anomalous) {
        std::uniform_real_distribution<double> u(0.0, side);
        const double x1 = u(rng);
        const double x2 = u(rng);
        s.x = {x1, x2};
        return s;
    }
    std::uniform_real_distribution<double> u(0.0, 1.1 * side);
    double x1 = 0.0;
    double x2 = 0.0;
    do {
        x1 = u(rng);
        x2 = u(rng);
    } while (x1 <= side && x2 <= side);
    s.x = {x1, x2};
    if (x1 > side && x2 <= side) {
        s.criterion = CriterionLabel::c1;
    } else if (x2 > side && x1 <= side) {
        s.criterion = CriterionLabel::c2;
    }
    return s;
}

MeasureSet UniformStreamGenerator::make_measures(std::size_t) const
{
    MeasureSet m;
    m.push_back(std::make_unique<AbsDifference>(0, nominal_extent(0)));
    m.push_back(std::make_unique<AbsDifference>(1, nominal_extent(0)));
    return m;
}

void UniformStreamGenerator::enter_regime(std::size_t regime, Detector& detector) const
{
    for (std::size_t i = 0; i < 2; ++i) {
        if (auto* m = dynamic_cast<AbsDifference*>(&detector.measure(i))) {
            m->set_scale(nominal_extent(regime));
        }
    }
}

CategoricalStreamGenerator::CategoricalStreamGenerator(std::uint64_t seed, CategoricalModelConfig model)
    : model_(model)
{
    if (model_.groups != 2) {
        throw std::invalid_argument("CategoricalStreamGenerator: exactly two groups are supported");
    }
    if (model_.attributes_per_group == 0 || model_.min_alphabet < 2 || model_.max_alphabet < model_.min_alphabet) {
        throw std::invalid_argument("CategoricalStreamGenerator: invalid model configuration");
    }
    Rng rng = make_rng(seed, 0, 7);
    const std::size_t attributes = model_.groups * model_.attributes_per_group;
    std::uniform_int_distribution<std::size_t> alphabet(model_.min_alphabet, model_.max_alphabet);
    alphabet_.resize(attributes);
    for (auto& a : alphabet_) {
        a = alphabet(rng);
    }

    cumulative_.assign(3, std::vector<std::vector<double>>(attributes));
    for (std::size_t dist = 0; dist < 3; ++dist) {
        for (std::size_t a = 0; a < attributes; ++a) {
            std::vector<double> p(alphabet_[a]);
            double sum = 0.0;
            for (std::size_t v = 0; v < p.size(); ++v) {
                double alpha = 1.0;
                if ((dist == nominal_before && v == 0) || (dist == nominal_after && v == 1)) {
                    alpha = model_.bias;
                }
                std::gamma_distribution<double> gamma(alpha, 1.0);
                p[v] = gamma(rng);
                sum += p[v];
            }
            double acc = 0.0;
            for (auto& x : p) {
                acc += x / sum;
                x = acc;
            }
            p.back() = 1.0;
            cumulative_[dist][a] = std::move(p);
        }
    }
}

double CategoricalStreamGenerator::draw_value(std::size_t attribute, Distribution dist, Rng& rng) const
{
    const auto& cdf = cumulative_[dist][attribute];
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<double>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1) + 1);
}

LabeledSample CategoricalStreamGenerator::draw(std::size_t regime, bool anomalous, Rng& rng) const
{
    LabeledSample s;
    s.regime = regime;
    s.anomalous = anomalous;
    std::size_t bad_group = model_.groups;
    if (anomalous) {
        bad_group = std::bernoulli_distribution(0.5)(rng) ? 0 : 1;
        s.criterion = bad_group == 0 ? CriterionLabel::c1 : CriterionLabel::c2;
    }
    const Distribution nominal = regime == 0 ? nominal_before : nominal_after;
    s.x.reserve(alphabet_.size());
    for (std::size_t g = 0; g < model_.groups; ++g) {
        const Distribution dist = g == bad_group ? anomalous_dist : nominal;
        for (std::size_t a = 0; a < model_.attributes_per_group; ++a) {
            s.x.push_back(draw_value(g * model_.attributes_per_group + a, dist, rng));
        }
    }
    return s;
}

MeasureSet CategoricalStreamGenerator::make_measures(std::size_t window) const
{
    const std::size_t per = model_.attributes_per_group;
    MeasureSet m;
    m.push_back(std::make_unique<IofDissimilarity>(0, per, std::max<std::size_t>(window, 2)));
    m.push_back(std::make_unique<IofDissimilarity>(per, 2 * per, std::max<std::size_t>(window, 2)));
    return m;
}

std::vector<LabeledSample> gen_uniform_stream(const StreamConfig& config)
{
    return UniformStreamGenerator{}.generate(config);
}

std::vector<LabeledSample> gen_categorical_stream(const StreamConfig& config, const CategoricalModelConfig& model)
{
    return CategoricalStreamGenerator(config.seed, model).generate(config);
}

std::unique_ptr<StreamGenerator> make_generator(const std::string& id, std::uint64_t seed)
{
    if (id == "uniform") {
        return std::make_unique<UniformStreamGenerator>();
    }
    if (id == "categorical") {
        return std::make_unique<CategoricalStreamGenerator>(seed);
    }
    throw std::invalid_argument("unknown stream generator '" + id + "'");
}

} // namespace pda
