#ifndef PDA_PARETO_SORT_HPP
#define PDA_PARETO_SORT_HPP

#include "pda/point_set.hpp"

#include <cstddef>
#include <vector>

namespace pda {

/// Output of nondominated sorting, aligned with the input point order.
///
/// depth[i] is the 1-based Pareto front of point i. front_sizes[k - 1] holds
/// the cardinality of front k. front_index and normalized_index are only
/// populated (2-D) by within_front_indices().
struct SortResult {
    std::vector<std::size_t> depth;
    std::vector<std::size_t> front_index;
    std::vector<double> normalized_index;
    std::vector<std::size_t> front_sizes;

    [[nodiscard]] std::size_t num_fronts() const noexcept { return front_sizes.size(); }
};

/// Reference sorter: peels minimal layers off the set one at a time using
/// domination counts. O(d n^2) time and up to O(n^2) memory.
[[nodiscard]] SortResult sort_bruteforce(const PointSet& points);

/// Exact O(n log n) sorter for d = 2.
///
/// Points are swept by ascending x1 (ties by x2). Each front keeps its most
/// recent member, the tail, whose (x2, x1) key is sorted ascending across
/// fronts; a point lands on the first front whose tail does not dominate it.
[[nodiscard]] SortResult sort_fast2d(const PointSet& points);

/// sort_fast2d when d = 2, otherwise sort_bruteforce.
[[nodiscard]] SortResult nondominated_sort(const PointSet& points);

/// Fills front_index (1-based rank by ascending x1 inside each front, ties by
/// x2 then input index) and normalized_index = front_index / front size.
[[nodiscard]] SortResult within_front_indices(const PointSet& points, SortResult sorted);

/// Locates points that are not part of a sorted 2-D training set relative to
/// its fronts without re-sorting.
class FrontLookup {
public:
    FrontLookup(const PointSet& training, const SortResult& sorted);

    /// 1 + the largest depth of any training point strictly dominating p.
    [[nodiscard]] std::size_t depth_of(Point2 p) const;

    /// Position of p inside front `depth` (1 + members lexicographically
    /// before p) divided by the front size after inserting p. A point past the
    /// last front opens a new front and gets 1.
    [[nodiscard]] double normalized_position(Point2 p, std::size_t depth) const;

    [[nodiscard]] std::size_t num_fronts() const noexcept { return fronts_.size(); }
    [[nodiscard]] std::size_t training_size() const noexcept { return size_; }

private:
    [[nodiscard]] bool front_dominates(std::size_t front, Point2 p) const;

    std::vector<std::vector<Point2>> fronts_;
    std::size_t size_ = 0;
};

} // namespace pda

#endif
