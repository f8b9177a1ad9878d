#include "pda/detector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pda {

void DetectorConfig::validate() const
{
    if (window < 2) {
        throw std::invalid_argument("DetectorConfig: window must be at least 2");
    }
    if (resolution < 2) {
        throw std::invalid_argument("DetectorConfig: resolution must be at least 2");
    }
    if (k_counts.size() != 2) {
        throw std::invalid_argument("DetectorConfig: need one neighbour count per criterion (2)");
    }
    if (std::any_of(k_counts.begin(), k_counts.end(), [](std::size_t k) { return k == 0; })) {
        throw std::invalid_argument("DetectorConfig: neighbour counts must be positive");
    }
    if (refresh_period == 0) {
        throw std::invalid_argument("DetectorConfig: refresh period must be positive");
    }
    if (std::isnan(rho)) {
        throw std::invalid_argument("DetectorConfig: rho is NaN");
    }
}

std::string to_string(CriterionLabel label) { return label == CriterionLabel::c1 ? "c1" : "c2"; }

std::vector<std::size_t> knn_union(std::span<const std::vector<double>> criterion_scores,
                                   std::span<const std::size_t> k_counts)
{
    if (criterion_scores.size() != k_counts.size()) {
        throw std::invalid_argument("knn_union: one k per criterion required");
    }
    if (criterion_scores.empty() || criterion_scores.front().empty()) {
        throw std::invalid_argument("knn_union: empty window");
    }
    const std::size_t n = criterion_scores.front().size();
    std::vector<char> selected(n, 0);
    std::vector<std::size_t> order(n);
    for (std::size_t c = 0; c < criterion_scores.size(); ++c) {
        const auto& scores = criterion_scores[c];
        if (scores.size() != n) {
            throw std::invalid_argument("knn_union: criteria disagree on window size");
        }
        if (k_counts[c] == 0) {
            throw std::invalid_argument("knn_union: k must be positive");
        }
        const std::size_t k = std::min(k_counts[c], n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        auto closer = [&scores](std::size_t a, std::size_t b) {
            return scores[a] < scores[b] || (scores[a] == scores[b] && a < b);
        };
        if (k < n) {
            std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(), closer);
        }
        for (std::size_t r = 0; r < k; ++r) {
            selected[order[r]] = 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (selected[i]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> knn_union(std::span<const Point2> dyads, std::span<const std::size_t> k_counts)
{
    std::vector<std::vector<double>> columns(2, std::vector<double>(dyads.size()));
    for (std::size_t i = 0; i < dyads.size(); ++i) {
        columns[0][i] = dyads[i][0];
        columns[1][i] = dyads[i][1];
    }
    return knn_union(std::span<const std::vector<double>>(columns), k_counts);
}

Detector::Detector(DetectorConfig config, MeasureSet measures)
    : config_(std::move(config))
    , window_(config_.window, std::move(measures))
{
    config_.validate();
}

double Detector::dyad_count() const noexcept
{
    const auto t = static_cast<double>(config_.window);
    return t * (t - 1.0) / 2.0;
}

std::optional<AnomalyVerdict> Detector::step(const Sample& sample)
{
    const std::size_t t = time_++;
    if (!warmed_up_) {
        on_update(window_.push(sample));
        if (window_.full()) {
            warmed_up_ = true;
            on_warmed_up();
        }
        return std::nullopt;
    }
    const auto dyads = window_.dyads_against(sample);
    AnomalyVerdict verdict = score(dyads);
    verdict.t = t;
    on_update(window_.push(sample, dyads));
    return verdict;
}

AnomalyVerdict Detector::evaluate(const Sample& sample)
{
    if (!warmed_up_) {
        throw std::logic_error("Detector::evaluate: warm-up has not completed");
    }
    AnomalyVerdict verdict = score(window_.dyads_against(sample));
    verdict.t = time_;
    return verdict;
}

AnomalyVerdict Detector::score(std::span<const Point2> dyads)
{
    const auto neighbors = knn_union(dyads, config_.k_counts);
    AnomalyVerdict verdict;
    verdict.neighbor_set_size = neighbors.size();
    verdict.nu = depth_score(dyads, neighbors);
    verdict.is_anomaly = verdict.nu > config_.rho;
    if (verdict.is_anomaly || config_.classify_all) {
        verdict.mu = classification_score(dyads, neighbors);
    }
    if (verdict.is_anomaly) {
        verdict.label = *verdict.mu > 0.5 ? CriterionLabel::c1 : CriterionLabel::c2;
    }
    return verdict;
}

PdeDetector::PdeDetector(DetectorConfig config, MeasureSet measures)
    : Detector(std::move(config), std::move(measures))
    , density_(this->config().resolution, this->config().window)
{
}

const HjeSolution& PdeDetector::depth_surface() const
{
    if (!hje_) {
        throw std::logic_error("PdeDetector: depth surface not solved yet");
    }
    return *hje_;
}

const TransportSolution& PdeDetector::transport()
{
    if (!transport_) {
        transport_ = solve_transport(depth_surface());
    }
    return *transport_;
}

void PdeDetector::on_update(const DyadWindow::Update& update)
{
    density_.slide(update.incoming, update.outgoing);
    if (warmed_up() && ++since_refresh_ >= config().refresh_period) {
        refresh();
    }
}

void PdeDetector::on_warmed_up() { refresh(); }

void PdeDetector::refresh()
{
    hje_ = solve_hje(density_.preconditioned());
    transport_.reset();
    since_refresh_ = 0;
}

double PdeDetector::depth_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors)
{
    const auto& surface = depth_surface();
    double sum = 0.0;
    for (auto s : neighbors) {
        sum += interpolate(surface.u, dyads[s]);
    }
    return std::sqrt(dyad_count()) * sum / static_cast<double>(neighbors.size());
}

double PdeDetector::classification_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors)
{
    const auto& w = transport().w;
    double sum = 0.0;
    for (auto s : neighbors) {
        sum += interpolate(w, dyads[s]);
    }
    return sum / static_cast<double>(neighbors.size());
}

ExactDetector::ExactDetector(DetectorConfig config, MeasureSet measures)
    : Detector(std::move(config), std::move(measures))
{
}

const FrontLookup& ExactDetector::fronts()
{
    if (!lookup_) {
        if (window().size() < 2) {
            throw std::logic_error("ExactDetector: window holds fewer than two samples");
        }
        const PointSet training = PointSet::from_points(window().all_dyads());
        lookup_.emplace(training, sort_fast2d(training));
    }
    return *lookup_;
}

void ExactDetector::on_update(const DyadWindow::Update&) { lookup_.reset(); }

void ExactDetector::on_warmed_up() { }

double ExactDetector::depth_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors)
{
    const auto& lookup = fronts();
    double sum = 0.0;
    for (auto s : neighbors) {
        sum += static_cast<double>(lookup.depth_of(dyads[s]));
    }
    return sum / static_cast<double>(neighbors.size());
}

double ExactDetector::classification_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors)
{
    const auto& lookup = fronts();
    double sum = 0.0;
    for (auto s : neighbors) {
        sum += lookup.normalized_position(dyads[s], lookup.depth_of(dyads[s]));
    }
    return sum / static_cast<double>(neighbors.size());
}

} // namespace pda
