#include "pda/roc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pda {

RocCurve roc_curve(std::span<const double> scores, const std::vector<bool>& positives)
{
    if (scores.size() != positives.size()) {
        throw std::invalid_argument("roc_curve: scores and labels differ in length");
    }
    const auto pos = static_cast<double>(std::count(positives.begin(), positives.end(), true));
    const auto neg = static_cast<double>(positives.size()) - pos;
    if (pos == 0 || neg == 0) {
        throw std::invalid_argument("roc_curve: need at least one positive and one negative");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    double tp = 0;
    double fp = 0;
    for (std::size_t r = 0; r < order.size();) {
        const double threshold = scores[order[r]];
        for (; r < order.size() && scores[order[r]] == threshold; ++r) {
            (positives[order[r]] ? tp : fp) += 1.0;
        }
        const RocPoint next{fp / neg, tp / pos};
        const RocPoint& prev = curve.points.back();
        curve.auc += (next.fpr - prev.fpr) * (next.tpr + prev.tpr) / 2.0;
        curve.points.push_back(next);
    }
    return curve;
}

double auc(std::span<const double> scores, const std::vector<bool>& positives) { return roc_curve(scores, positives).auc; }

double pearson_correlation(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size() || a.size() < 2) {
        throw std::invalid_argument("pearson_correlation: need two equally long samples of size >= 2");
    }
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0;
    double saa = 0;
    double sbb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty() || q < 0.0 || q > 1.0) {
        throw std::invalid_argument("quantile: empty sample or q outside [0, 1]");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

} // namespace pda
