#ifndef PDA_ROC_HPP
#define PDA_ROC_HPP

#include <span>
#include <vector>

namespace pda {

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

/// ROC curve over all thresholds of a score (higher = more anomalous).
/// Points run from (0,0) to (1,1); tied scores move diagonally.
struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// Throws std::invalid_argument unless both classes are present.
[[nodiscard]] RocCurve roc_curve(std::span<const double> scores, const std::vector<bool>& positives);
[[nodiscard]] double auc(std::span<const double> scores, const std::vector<bool>& positives);

[[nodiscard]] double pearson_correlation(std::span<const double> a, std::span<const double> b);

/// Linear interpolation between order statistics, q in [0, 1].
[[nodiscard]] double quantile(std::vector<double> values, double q);

} // namespace pda

#endif
