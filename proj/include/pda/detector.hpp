#ifndef PDA_DETECTOR_HPP
#define PDA_DETECTOR_HPP

#include "pda/density.hpp"
#include "pda/dyad_window.hpp"
#include "pda/hje_solver.hpp"
#include "pda/pareto_sort.hpp"
#include "pda/transport_solver.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pda {

struct DetectorConfig {
    std::size_t window = 500;
    std::size_t resolution = 100;
    std::vector<std::size_t> k_counts{6, 7};
    double rho = std::numeric_limits<double>::infinity();
    /// Re-solve the depth surface every this many steps.
    std::size_t refresh_period = 1;
    /// Compute mu for every scored sample, not only flagged ones.
    bool classify_all = false;

    void validate() const;
};

enum class CriterionLabel { c1, c2 };

[[nodiscard]] std::string to_string(CriterionLabel label);

struct AnomalyVerdict {
    std::size_t t = 0;
    double nu = 0.0;
    bool is_anomaly = false;
    std::optional<double> mu;
    std::optional<CriterionLabel> label;
    std::size_t neighbor_set_size = 0;
};

/// Union over criteria of the k_i window indices with the smallest criterion
/// score. Ties go to the older sample. k_i larger than the window selects the
/// whole window. Result is sorted ascending.
[[nodiscard]] std::vector<std::size_t> knn_union(std::span<const std::vector<double>> criterion_scores,
                                                 std::span<const std::size_t> k_counts);
[[nodiscard]] std::vector<std::size_t> knn_union(std::span<const Point2> dyads, std::span<const std::size_t> k_counts);

/// Streaming multi-criteria detector skeleton shared by the PDE and the
/// exact-sorting variants.
///
/// The first T samples only fill the window. Every later sample is scored
/// against the current window and then pushed into it, evicting the oldest.
class Detector {
public:
    Detector(DetectorConfig config, MeasureSet measures);
    virtual ~Detector() = default;

    /// Returns no verdict during warm-up.
    std::optional<AnomalyVerdict> step(const Sample& sample);

    /// Scores a sample against the current window without consuming it.
    [[nodiscard]] AnomalyVerdict evaluate(const Sample& sample);

    [[nodiscard]] bool warmed_up() const noexcept { return warmed_up_; }
    /// Number of samples consumed so far.
    [[nodiscard]] std::size_t time() const noexcept { return time_; }
    /// n = T (T - 1) / 2, the number of training dyads.
    [[nodiscard]] double dyad_count() const noexcept;

    [[nodiscard]] const DetectorConfig& config() const noexcept { return config_; }
    [[nodiscard]] const DyadWindow& window() const noexcept { return window_; }
    [[nodiscard]] SimilarityMeasure& measure(std::size_t i) { return window_.measure(i); }

protected:
    virtual void on_update(const DyadWindow::Update& update) = 0;
    virtual void on_warmed_up() = 0;
    [[nodiscard]] virtual double depth_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors) = 0;
    [[nodiscard]] virtual double classification_score(std::span<const Point2> dyads,
                                                      std::span<const std::size_t> neighbors) = 0;

private:
    AnomalyVerdict score(std::span<const Point2> dyads);

    DetectorConfig config_;
    DyadWindow window_;
    bool warmed_up_ = false;
    std::size_t time_ = 0;
};

/// Real-time detector: histogram density of the window dyads, updated in
/// O(T) per sample, with depths read off the numerical HJE solution
/// (nu = mean sqrt(n) u_h over the neighbour dyads) and the classification
/// score from the transport solution w_h.
class PdeDetector final : public Detector {
public:
    PdeDetector(DetectorConfig config, MeasureSet measures);

    [[nodiscard]] const StreamingDensity& density() const noexcept { return density_; }
    /// Throws std::logic_error before warm-up completes.
    [[nodiscard]] const HjeSolution& depth_surface() const;
    [[nodiscard]] const TransportSolution& transport();

private:
    void on_update(const DyadWindow::Update& update) override;
    void on_warmed_up() override;
    double depth_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors) override;
    double classification_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors) override;

    void refresh();

    StreamingDensity density_;
    std::optional<HjeSolution> hje_;
    std::optional<TransportSolution> transport_;
    std::size_t since_refresh_ = 0;
};

/// Reference detector: sorts all window dyads exactly after every window
/// change and scores a dyad by 1 + the largest depth of a training dyad that
/// dominates it. nu is reported in depth units (mean U_n).
class ExactDetector final : public Detector {
public:
    ExactDetector(DetectorConfig config, MeasureSet measures);

    [[nodiscard]] const FrontLookup& fronts();

private:
    void on_update(const DyadWindow::Update& update) override;
    void on_warmed_up() override;
    double depth_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors) override;
    double classification_score(std::span<const Point2> dyads, std::span<const std::size_t> neighbors) override;

    std::optional<FrontLookup> lookup_;
};

} // namespace pda

#endif
