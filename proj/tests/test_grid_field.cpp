#include "pda/csv.hpp"
#include "pda/grid_field.hpp"
#include "pda/streams.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

using namespace pda;

namespace {

GridField sampled(std::size_t k, double (*fn)(double, double))
{
    GridField f(k);
    for (std::size_t i = 0; i <= k; ++i) {
        for (std::size_t j = 0; j <= k; ++j) {
            f(i, j) = fn(f.coordinate(i), f.coordinate(j));
        }
    }
    return f;
}

GridField random_field(Rng& rng, std::size_t k, double lo = -1.0, double hi = 1.0)
{
    std::uniform_real_distribution<double> u(lo, hi);
    GridField f(k);
    for (std::size_t i = 0; i <= k; ++i) {
        for (std::size_t j = 0; j <= k; ++j) {
            f(i, j) = u(rng);
        }
    }
    return f;
}

std::filesystem::path temp_path(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("pda_grid_test_" + name);
}

} // namespace

TEST(GridField, ConstructionAndCoordinates)
{
    const GridField f(10, 2.5);
    EXPECT_EQ(f.resolution(), 10u);
    EXPECT_EQ(f.nodes_per_side(), 11u);
    EXPECT_DOUBLE_EQ(f.spacing(), 0.1);
    EXPECT_EQ(f.coordinate(0), 0.0);
    EXPECT_EQ(f.coordinate(10), 1.0);
    EXPECT_DOUBLE_EQ(f.coordinate(3), 0.3);
    EXPECT_EQ(f.values().size(), 121u);
    EXPECT_EQ(f.min_value(), 2.5);
    EXPECT_EQ(f.max_value(), 2.5);
}

TEST(GridField, RejectsInvalid)
{
    EXPECT_THROW(GridField(1), std::invalid_argument);
    EXPECT_THROW(GridField(2, std::vector<double>(8, 0.0)), std::invalid_argument);
    std::vector<double> v(9, 0.0);
    v[4] = std::nan("");
    EXPECT_THROW(GridField(2, v), std::invalid_argument);
    EXPECT_THROW(GridField(2, INFINITY), std::invalid_argument);
}

TEST(FiniteDifferences, LinearAndConstant)
{
    const GridField lin = sampled(10, [](double x1, double) { return x1; });
    const GridField con(10, 3.0);
    for (std::size_t i = 1; i < 10; ++i) {
        for (std::size_t j = 1; j < 10; ++j) {
            EXPECT_NEAR(backward_diff(lin, {i, j}, Axis::x1), 1.0, 1e-12);
            EXPECT_NEAR(forward_diff(lin, {i, j}, Axis::x1), 1.0, 1e-12);
            EXPECT_NEAR(backward_diff(lin, {i, j}, Axis::x2), 0.0, 1e-12);
            EXPECT_EQ(backward_diff(con, {i, j}, Axis::x2), 0.0);
            EXPECT_EQ(forward_diff(con, {i, j}, Axis::x1), 0.0);
        }
    }
}

TEST(FiniteDifferences, QuadraticExample)
{
    const GridField sq = sampled(10, [](double x1, double) { return x1 * x1; });
    EXPECT_NEAR(backward_diff(sq, {5, 3}, Axis::x1), 0.9, 1e-12);
    EXPECT_NEAR(forward_diff(sq, {5, 3}, Axis::x1), 1.1, 1e-12);
}

TEST(FiniteDifferences, MissingNeighbourThrows)
{
    const GridField f(4);
    EXPECT_THROW((void)backward_diff(f, {0, 2}, Axis::x1), std::out_of_range);
    EXPECT_THROW((void)backward_diff(f, {2, 0}, Axis::x2), std::out_of_range);
    EXPECT_THROW((void)forward_diff(f, {4, 2}, Axis::x1), std::out_of_range);
    EXPECT_THROW((void)forward_diff(f, {2, 4}, Axis::x2), std::out_of_range);
    EXPECT_THROW((void)forward_diff(f, {5, 2}, Axis::x2), std::out_of_range);
}

TEST(Interpolate, ExactAtNodesAndForBilinear)
{
    Rng rng = make_rng(1);
    const GridField f = random_field(rng, 7);
    for (std::size_t i = 0; i <= 7; ++i) {
        for (std::size_t j = 0; j <= 7; ++j) {
            EXPECT_EQ(interpolate(f, {f.coordinate(i), f.coordinate(j)}), f(i, j));
        }
    }
    const GridField bil = sampled(9, [](double x1, double x2) { return 1.0 + 2.0 * x1 - x2 + 3.0 * x1 * x2; });
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int q = 0; q < 500; ++q) {
        const double x1 = u(rng);
        const double x2 = u(rng);
        // bilinear within every cell, but 3 x1 x2 is globally bilinear too
        EXPECT_NEAR(interpolate(bil, {x1, x2}), 1.0 + 2.0 * x1 - x2 + 3.0 * x1 * x2, 1e-12);
    }
}

TEST(Interpolate, CellCentreAverage)
{
    GridField f(2);
    f(0, 0) = 0.0;
    f(1, 0) = 1.0;
    f(0, 1) = 1.0;
    f(1, 1) = 2.0;
    EXPECT_DOUBLE_EQ(interpolate(f, {0.25, 0.25}), 1.0);
}

TEST(Interpolate, ClampsOutsideTheBox)
{
    const GridField f = sampled(4, [](double x1, double x2) { return x1 + x2; });
    const auto inside = interpolate_checked(f, {0.5, 0.25});
    EXPECT_FALSE(inside.clamped);
    const auto out = interpolate_checked(f, {1.7, -0.2});
    EXPECT_TRUE(out.clamped);
    EXPECT_DOUBLE_EQ(out.value, 1.0);
    EXPECT_DOUBLE_EQ(interpolate(f, {-3.0, 2.0}), 1.0);
}

TEST(Interpolate, PropertyBoundedByCellCornersAndMonotone)
{
    Rng rng = make_rng(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t k = 2 + trial;
        const GridField f = random_field(rng, k);
        GridField g = f;
        for (std::size_t i = 0; i <= k; ++i) {
            for (std::size_t j = 0; j <= k; ++j) {
                g(i, j) += u(rng);
            }
        }
        for (int q = 0; q < 100; ++q) {
            const Point2 x{u(rng), u(rng)};
            const auto ci = std::min<std::size_t>(static_cast<std::size_t>(x[0] * k), k - 1);
            const auto cj = std::min<std::size_t>(static_cast<std::size_t>(x[1] * k), k - 1);
            const double lo = std::min({f(ci, cj), f(ci + 1, cj), f(ci, cj + 1), f(ci + 1, cj + 1)});
            const double hi = std::max({f(ci, cj), f(ci + 1, cj), f(ci, cj + 1), f(ci + 1, cj + 1)});
            const double v = interpolate(f, x);
            EXPECT_GE(v, lo - 1e-12);
            EXPECT_LE(v, hi + 1e-12);
            EXPECT_LE(v, interpolate(g, x));
        }
    }
}

TEST(GridIo, CsvRoundTripIsBitExact)
{
    Rng rng = make_rng(3);
    const GridField f = random_field(rng, 13, -1e6, 1e6);
    std::stringstream ss;
    write_csv(ss, f);
    const std::string first = ss.str();
    const GridField back = read_csv_grid(ss);
    EXPECT_EQ(back, f);
    std::stringstream again;
    write_csv(again, back);
    EXPECT_EQ(again.str(), first);
}

TEST(GridIo, BinaryRoundTripIsBitExact)
{
    Rng rng = make_rng(4);
    const GridField f = random_field(rng, 21);
    std::stringstream ss;
    write_binary(ss, f);
    EXPECT_EQ(ss.str().size(), 8u + 22u * 22u * 8u);
    EXPECT_EQ(read_binary_grid(ss), f);
}

TEST(GridIo, SaveLoadByExtension)
{
    Rng rng = make_rng(5);
    const GridField f = random_field(rng, 5);
    for (const char* name : {"g.csv", "g.bin"}) {
        const auto path = temp_path(name);
        save_grid(path.string(), f);
        EXPECT_EQ(load_grid(path.string()), f);
        std::filesystem::remove(path);
    }
    EXPECT_THROW((void)load_grid(temp_path("missing.bin").string()), std::runtime_error);
}

TEST(GridIo, RejectsMalformedInput)
{
    std::stringstream ragged("1,2,3\n4,5\n6,7,8\n");
    EXPECT_THROW((void)read_csv_grid(ragged), std::invalid_argument);
    std::stringstream truncated;
    write_binary(truncated, GridField(3, 1.0));
    std::string bytes = truncated.str();
    bytes.resize(bytes.size() - 4);
    std::stringstream cut(bytes);
    EXPECT_THROW((void)read_binary_grid(cut), std::runtime_error);
}

TEST(Csv, DoubleFormattingRoundTrips)
{
    Rng rng = make_rng(6);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double v = u(rng) * std::pow(10.0, (i % 40) - 20);
        EXPECT_EQ(parse_double(format_double(v)), v);
    }
    EXPECT_EQ(parse_double(" +2.5 "), 2.5);
    EXPECT_THROW((void)parse_double("abc"), std::invalid_argument);
    EXPECT_THROW((void)parse_double("1.5x"), std::invalid_argument);
}

TEST(Csv, TableRoundTripIsByteIdentical)
{
    const std::string text = "# {\"a\":1}\nx,y\n1,2\n0.5,-3e-07\n";
    std::stringstream in(text);
    const CsvTable t = read_csv_table(in);
    EXPECT_EQ(t.metadata.size(), 1u);
    EXPECT_EQ(t.header, (std::vector<std::string>{"x", "y"}));
    EXPECT_EQ(t.column("y"), 1u);
    EXPECT_DOUBLE_EQ(t.number(1, 1), -3e-07);
    EXPECT_THROW((void)t.column("z"), std::out_of_range);
    std::stringstream out;
    write_csv_table(out, t);
    EXPECT_EQ(out.str(), text);
}
