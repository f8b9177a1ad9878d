#include "pda/pareto_sort.hpp"
#include "pda/streams.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

using namespace pda;

namespace {

std::vector<double> vec(std::initializer_list<double> v) { return v; }

PointSet points2(std::initializer_list<Point2> pts) { return PointSet::from_points(std::vector<Point2>(pts)); }

std::vector<Point2> random_points(Rng& rng, std::size_t n, bool lattice = false)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> l(0, 6);
    std::vector<Point2> pts(n);
    for (auto& p : pts) {
        p = lattice ? Point2{l(rng) / 6.0, l(rng) / 6.0} : Point2{u(rng), u(rng)};
    }
    return pts;
}

// Oracle for depths straight from the definition: a point's depth is one
// more than the deepest point that dominates it.
std::vector<std::size_t> depth_by_recursion(const std::vector<Point2>& pts)
{
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
    std::vector<std::size_t> depth(pts.size(), 0);
    for (std::size_t r = 0; r < order.size(); ++r) {
        std::size_t d = 1;
        for (std::size_t q = 0; q < r; ++q) {
            if (dominates(pts[order[q]], pts[order[r]])) {
                d = std::max(d, depth[order[q]] + 1);
            }
        }
        depth[order[r]] = d;
    }
    return depth;
}

} // namespace

TEST(Dominates, SpecExamples)
{
    EXPECT_TRUE(dominates(vec({0, 0}), vec({1, 1})));
    EXPECT_FALSE(dominates(vec({0, 1}), vec({1, 0})));
    EXPECT_FALSE(dominates(vec({0.5, 0.5}), vec({0.5, 0.5})));
    EXPECT_TRUE(dominates(vec({0.5, 0.2}), vec({0.5, 0.5})));
    EXPECT_TRUE(dominates(vec({0, 0, 0}), vec({0, 0, 1})));
}

TEST(Dominates, DimensionMismatchThrows) { EXPECT_THROW((void)dominates(vec({0, 0}), vec({0, 0, 0})), std::invalid_argument); }

TEST(PointSet, RejectsBadInput)
{
    EXPECT_THROW(PointSet(1), std::invalid_argument);
    EXPECT_THROW(PointSet(2, {0.0, 1.0, 2.0}), std::invalid_argument);
    EXPECT_THROW(PointSet(2, {0.0, std::nan("")}), std::invalid_argument);
    EXPECT_THROW(PointSet(2, {0.0, INFINITY}), std::invalid_argument);
    const std::vector<std::vector<double>> ragged{{0.0, 1.0}, {0.0}};
    EXPECT_THROW(PointSet::from_rows(ragged), std::invalid_argument);
}

TEST(SortBruteforce, FourPointExample)
{
    const auto r = sort_bruteforce(points2({{0.1, 0.9}, {0.2, 0.2}, {0.9, 0.1}, {0.5, 0.5}}));
    EXPECT_EQ(r.depth, (std::vector<std::size_t>{1, 1, 1, 2}));
    EXPECT_EQ(r.front_sizes, (std::vector<std::size_t>{3, 1}));
}

TEST(SortBruteforce, ChainAndAntichain)
{
    std::vector<Point2> chain;
    std::vector<Point2> anti;
    for (int i = 0; i < 20; ++i) {
        chain.push_back({0.05 * i, 0.01 * i});
        anti.push_back({0.05 * i, 1.0 - 0.05 * i});
    }
    std::reverse(chain.begin(), chain.end());
    const auto rc = sort_bruteforce(PointSet::from_points(chain));
    for (std::size_t i = 0; i < chain.size(); ++i) {
        EXPECT_EQ(rc.depth[i], chain.size() - i);
    }
    const auto ra = sort_bruteforce(PointSet::from_points(anti));
    EXPECT_TRUE(std::all_of(ra.depth.begin(), ra.depth.end(), [](auto d) { return d == 1; }));
}

TEST(SortBruteforce, EmptyAndHigherDimension)
{
    const auto r = sort_bruteforce(PointSet(2));
    EXPECT_TRUE(r.depth.empty());
    EXPECT_EQ(r.num_fronts(), 0u);

    PointSet p3(3);
    p3.push_back(vec({0, 0, 0}));
    p3.push_back(vec({1, 1, 0}));
    p3.push_back(vec({1, 0, 1}));
    p3.push_back(vec({1, 1, 1}));
    EXPECT_EQ(sort_bruteforce(p3).depth, (std::vector<std::size_t>{1, 2, 2, 3}));
    EXPECT_EQ(nondominated_sort(p3).depth, (std::vector<std::size_t>{1, 2, 2, 3}));
}

TEST(SortFast2d, SmallCases)
{
    EXPECT_EQ(sort_fast2d(points2({{0.4, 0.7}})).depth, (std::vector<std::size_t>{1}));
    EXPECT_EQ(sort_fast2d(points2({{0.3, 0.3}, {0.3, 0.3}})).depth, (std::vector<std::size_t>{1, 1}));
    EXPECT_TRUE(sort_fast2d(PointSet(2)).depth.empty());
    PointSet p3(3);
    EXPECT_THROW((void)sort_fast2d(p3), std::invalid_argument);
}

TEST(SortFast2d, TiesOnOneCoordinate)
{
    // same x1: the lower x2 dominates; same x2: the lower x1 dominates
    const auto r = sort_fast2d(points2({{0.5, 0.5}, {0.5, 0.2}, {0.2, 0.2}, {0.5, 0.2}, {0.2, 0.5}}));
    EXPECT_EQ(r.depth, (std::vector<std::size_t>{3, 2, 1, 2, 2}));
}

TEST(SortFast2d, MatchesBruteforceOn1000Uniform)
{
    Rng rng = make_rng(1);
    const auto pts = PointSet::from_points(random_points(rng, 1000));
    const auto a = sort_fast2d(pts);
    const auto b = sort_bruteforce(pts);
    EXPECT_EQ(a.depth, b.depth);
    EXPECT_EQ(a.front_sizes, b.front_sizes);
}

TEST(SortFast2d, PropertyMatchesDefinitionOracle)
{
    Rng rng = make_rng(2);
    std::uniform_int_distribution<std::size_t> size(0, 300);
    for (int trial = 0; trial < 60; ++trial) {
        const auto pts = random_points(rng, size(rng), trial % 2 == 1);
        const auto set = PointSet::from_points(pts);
        const auto expected = depth_by_recursion(pts);
        EXPECT_EQ(sort_fast2d(set).depth, expected) << "trial " << trial;
        EXPECT_EQ(sort_bruteforce(set).depth, expected) << "trial " << trial;
    }
}

TEST(SortProperties, FrontsPartitionAndAreAntichains)
{
    Rng rng = make_rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_points(rng, 400, trial % 3 == 0);
        const auto set = PointSet::from_points(pts);
        const auto r = within_front_indices(set, sort_fast2d(set));
        std::size_t total = 0;
        for (auto s : r.front_sizes) {
            total += s;
        }
        EXPECT_EQ(total, pts.size());
        for (std::size_t a = 0; a < pts.size(); ++a) {
            for (std::size_t b = 0; b < pts.size(); ++b) {
                if (r.depth[a] == r.depth[b]) {
                    ASSERT_FALSE(dominates(pts[a], pts[b]));
                }
            }
        }
        // ascending x1 inside a front goes with non-increasing x2
        std::map<std::size_t, std::vector<std::size_t>> fronts;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            fronts[r.depth[i]].push_back(i);
        }
        for (auto& [k, members] : fronts) {
            std::sort(members.begin(), members.end(),
                      [&](std::size_t a, std::size_t b) { return r.front_index[a] < r.front_index[b]; });
            for (std::size_t m = 0; m < members.size(); ++m) {
                EXPECT_EQ(r.front_index[members[m]], m + 1);
                if (m > 0) {
                    EXPECT_LE(pts[members[m - 1]][0], pts[members[m]][0]);
                    EXPECT_GE(pts[members[m - 1]][1], pts[members[m]][1]);
                }
            }
        }
    }
}

TEST(SortProperties, AddingAPointNeverDecreasesDepths)
{
    Rng rng = make_rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto pts = random_points(rng, 200, trial % 2 == 0);
        const auto before = sort_fast2d(PointSet::from_points(pts)).depth;
        pts.push_back({u(rng), u(rng)});
        const auto after = sort_fast2d(PointSet::from_points(pts)).depth;
        for (std::size_t i = 0; i < before.size(); ++i) {
            ASSERT_GE(after[i], before[i]);
        }
    }
}

TEST(SortProperties, InvariantUnderMonotoneCoordinateMaps)
{
    Rng rng = make_rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_points(rng, 300, trial % 2 == 0);
        std::vector<Point2> mapped(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            mapped[i] = {std::exp(3.0 * pts[i][0]) - 7.0, std::cbrt(pts[i][1]) * 100.0};
        }
        const auto a = PointSet::from_points(pts);
        const auto b = PointSet::from_points(mapped);
        const auto ra = within_front_indices(a, sort_fast2d(a));
        const auto rb = within_front_indices(b, sort_fast2d(b));
        EXPECT_EQ(ra.depth, rb.depth);
        EXPECT_EQ(ra.front_index, rb.front_index);
        EXPECT_EQ(ra.normalized_index, rb.normalized_index);
    }
}

TEST(WithinFront, ThreePointFront)
{
    const auto set = points2({{0.9, 0.1}, {0.1, 0.9}, {0.2, 0.2}});
    const auto r = within_front_indices(set, sort_fast2d(set));
    EXPECT_EQ(r.front_index, (std::vector<std::size_t>{3, 1, 2}));
    EXPECT_DOUBLE_EQ(r.normalized_index[0], 1.0);
    EXPECT_DOUBLE_EQ(r.normalized_index[1], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(r.normalized_index[2], 2.0 / 3.0);
}

TEST(WithinFront, SingletonAndTies)
{
    const auto one = points2({{0.4, 0.4}});
    const auto r1 = within_front_indices(one, sort_fast2d(one));
    EXPECT_EQ(r1.front_index[0], 1u);
    EXPECT_DOUBLE_EQ(r1.normalized_index[0], 1.0);

    // duplicates share a front; ties in x1 and x2 fall back to input order
    const auto dup = points2({{0.3, 0.3}, {0.3, 0.3}, {0.1, 0.6}});
    const auto r2 = within_front_indices(dup, sort_fast2d(dup));
    EXPECT_EQ(r2.front_index, (std::vector<std::size_t>{2, 3, 1}));
}

TEST(WithinFront, WInUnitIntervalAndMaxEqualsFrontSize)
{
    Rng rng = make_rng(6);
    const auto set = PointSet::from_points(random_points(rng, 2000));
    const auto r = within_front_indices(set, sort_fast2d(set));
    std::vector<std::size_t> max_index(r.num_fronts(), 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        EXPECT_GT(r.normalized_index[i], 0.0);
        EXPECT_LE(r.normalized_index[i], 1.0);
        max_index[r.depth[i] - 1] = std::max(max_index[r.depth[i] - 1], r.front_index[i]);
    }
    EXPECT_EQ(max_index, r.front_sizes);
}

TEST(WithinFront, RejectsMismatchedInput)
{
    const auto set = points2({{0.1, 0.2}, {0.3, 0.1}});
    SortResult bad;
    bad.depth = {1};
    EXPECT_THROW((void)within_front_indices(set, bad), std::invalid_argument);
}

TEST(FrontLookup, DepthMatchesInsertAndResort)
{
    Rng rng = make_rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const bool lattice = trial % 2 == 1;
        const auto pts = random_points(rng, 100, lattice);
        const auto set = PointSet::from_points(pts);
        const FrontLookup lookup(set, sort_fast2d(set));
        for (int q = 0; q < 25; ++q) {
            const Point2 p = lattice ? random_points(rng, 1, true)[0] : Point2{u(rng), u(rng)};
            auto with = pts;
            with.push_back(p);
            const auto resorted = sort_bruteforce(PointSet::from_points(with));
            ASSERT_EQ(lookup.depth_of(p), resorted.depth.back()) << "trial " << trial;
        }
    }
}

TEST(FrontLookup, NormalizedPositionCountsOldFrontMembers)
{
    Rng rng = make_rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const auto pts = random_points(rng, 150);
        const auto set = PointSet::from_points(pts);
        const auto sorted = sort_fast2d(set);
        const FrontLookup lookup(set, sorted);
        for (int q = 0; q < 20; ++q) {
            const Point2 p{u(rng), u(rng)};
            const std::size_t d = lookup.depth_of(p);
            std::size_t before = 0;
            std::size_t size = 0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                if (sorted.depth[i] == d) {
                    ++size;
                    before += pts[i] < p ? 1 : 0;
                }
            }
            const double expected =
                size == 0 ? 1.0 : static_cast<double>(before + 1) / static_cast<double>(size + 1);
            EXPECT_DOUBLE_EQ(lookup.normalized_position(p, d), expected);
        }
    }
}

TEST(FrontLookup, NewDeepestFrontAndBoundaryCases)
{
    const auto set = points2({{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}});
    const FrontLookup lookup(set, sort_fast2d(set));
    EXPECT_EQ(lookup.num_fronts(), 1u);
    EXPECT_EQ(lookup.training_size(), 3u);
    EXPECT_EQ(lookup.depth_of({0.0, 0.0}), 1u);
    EXPECT_EQ(lookup.depth_of({0.5, 0.5}), 1u);
    EXPECT_EQ(lookup.depth_of({0.95, 0.95}), 2u);
    EXPECT_DOUBLE_EQ(lookup.normalized_position({0.95, 0.95}, 2), 1.0);
    EXPECT_DOUBLE_EQ(lookup.normalized_position({0.0, 1.0}, 1), 0.25);
    EXPECT_DOUBLE_EQ(lookup.normalized_position({1.0, 0.0}, 1), 1.0);
}
