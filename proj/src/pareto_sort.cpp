#include "pda/pareto_sort.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace pda {

namespace {
    void count_fronts(SortResult& result)
    {
        std::size_t max_depth = 0;
        for (auto d : result.depth) {
            max_depth = std::max(max_depth, d);
        }
        result.front_sizes.assign(max_depth, 0);
        for (auto d : result.depth) {
            ++result.front_sizes[d - 1];
        }
    }

    bool lex_less(Point2 a, Point2 b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); }
} // namespace

SortResult sort_bruteforce(const PointSet& points)
{
    const std::size_t n = points.size();
    SortResult result;
    result.depth.assign(n, 0);
    if (n == 0) {
        return result;
    }

    std::vector<std::uint32_t> dominator_count(n, 0);
    std::vector<std::vector<std::uint32_t>> dominated(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated[i].push_back(static_cast<std::uint32_t>(j));
                ++dominator_count[j];
            } else if (dominates(points[j], points[i])) {
                dominated[j].push_back(static_cast<std::uint32_t>(i));
                ++dominator_count[i];
            }
        }
    }

    std::vector<std::uint32_t> layer;
    for (std::size_t i = 0; i < n; ++i) {
        if (dominator_count[i] == 0) {
            layer.push_back(static_cast<std::uint32_t>(i));
        }
    }
    std::size_t depth = 1;
    std::vector<std::uint32_t> next;
    while (!layer.empty()) {
        next.clear();
        for (auto i : layer) {
            result.depth[i] = depth;
            for (auto j : dominated[i]) {
                if (--dominator_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        layer.swap(next);
        ++depth;
    }
    count_fronts(result);
    return result;
}

SortResult sort_fast2d(const PointSet& points)
{
    if (points.dim() != 2) {
        throw std::invalid_argument("sort_fast2d: requires dimension 2");
    }
    const std::size_t n = points.size();
    SortResult result;
    result.depth.assign(n, 0);
    if (n == 0) {
        return result;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& c = points.coords();
    std::sort(order.begin(), order.end(), [&c](std::size_t a, std::size_t b) {
        return lex_less({c[2 * a], c[2 * a + 1]}, {c[2 * b], c[2 * b + 1]});
    });

    // tails[k] = (x2, x1) of the last point placed on front k + 1. A tail
    // dominates p iff its key is lexicographically smaller than p's key.
    std::vector<Point2> tails;
    for (auto idx : order) {
        const Point2 key{c[2 * idx + 1], c[2 * idx]};
        auto it = std::lower_bound(tails.begin(), tails.end(), key, lex_less);
        result.depth[idx] = static_cast<std::size_t>(it - tails.begin()) + 1;
        if (it == tails.end()) {
            tails.push_back(key);
        } else {
            *it = key;
        }
    }
    count_fronts(result);
    return result;
}

SortResult nondominated_sort(const PointSet& points)
{
    return points.dim() == 2 ? sort_fast2d(points) : sort_bruteforce(points);
}

SortResult within_front_indices(const PointSet& points, SortResult sorted)
{
    if (points.dim() != 2) {
        throw std::invalid_argument("within_front_indices: requires dimension 2");
    }
    const std::size_t n = points.size();
    if (sorted.depth.size() != n) {
        throw std::invalid_argument("within_front_indices: depth array does not match the point set");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto& c = points.coords();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (sorted.depth[a] != sorted.depth[b]) {
            return sorted.depth[a] < sorted.depth[b];
        }
        if (c[2 * a] != c[2 * b]) {
            return c[2 * a] < c[2 * b];
        }
        if (c[2 * a + 1] != c[2 * b + 1]) {
            return c[2 * a + 1] < c[2 * b + 1];
        }
        return a < b;
    });

    sorted.front_index.assign(n, 0);
    sorted.normalized_index.assign(n, 0.0);
    std::size_t rank = 0;
    std::size_t current = 0;
    for (auto idx : order) {
        if (sorted.depth[idx] != current) {
            current = sorted.depth[idx];
            rank = 0;
        }
        sorted.front_index[idx] = ++rank;
        sorted.normalized_index[idx] =
            static_cast<double>(rank) / static_cast<double>(sorted.front_sizes[current - 1]);
    }
    return sorted;
}

FrontLookup::FrontLookup(const PointSet& training, const SortResult& sorted)
    : size_(training.size())
{
    if (training.dim() != 2) {
        throw std::invalid_argument("FrontLookup: requires dimension 2");
    }
    if (sorted.depth.size() != training.size()) {
        throw std::invalid_argument("FrontLookup: depth array does not match the point set");
    }
    fronts_.resize(sorted.num_fronts());
    for (std::size_t k = 0; k < fronts_.size(); ++k) {
        fronts_[k].reserve(sorted.front_sizes[k]);
    }
    for (std::size_t i = 0; i < training.size(); ++i) {
        auto p = training[i];
        fronts_[sorted.depth[i] - 1].push_back({p[0], p[1]});
    }
    for (auto& front : fronts_) {
        std::sort(front.begin(), front.end(), lex_less);
    }
}

bool FrontLookup::front_dominates(std::size_t front, Point2 p) const
{
    const auto& f = fronts_[front];
    // Last member with x1 <= p.x1; it has the smallest x2 among those.
    auto it = std::upper_bound(f.begin(), f.end(), p[0], [](double x, const Point2& q) { return x < q[0]; });
    if (it == f.begin()) {
        return false;
    }
    const Point2& q = *std::prev(it);
    return q[1] <= p[1] && q != p;
}

std::size_t FrontLookup::depth_of(Point2 p) const
{
    // Fronts dominating p form a prefix of the front list.
    std::size_t lo = 0;
    std::size_t hi = fronts_.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (front_dominates(mid, p)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return lo + 1;
}

double FrontLookup::normalized_position(Point2 p, std::size_t depth) const
{
    if (depth == 0 || depth > fronts_.size() + 1) {
        throw std::out_of_range("FrontLookup::normalized_position: depth out of range");
    }
    if (depth == fronts_.size() + 1) {
        return 1.0;
    }
    const auto& f = fronts_[depth - 1];
    const auto before = std::lower_bound(f.begin(), f.end(), p, lex_less) - f.begin();
    return static_cast<double>(before + 1) / static_cast<double>(f.size() + 1);
}

} // namespace pda
