#ifndef PDA_GRID_FIELD_HPP
#define PDA_GRID_FIELD_HPP

#include "pda/point_set.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pda {

enum class Axis { x1 = 0, x2 = 1 };

struct Node {
    std::size_t i = 0;
    std::size_t j = 0;
};

/// Scalar field sampled at the nodes (i/K, j/K), 0 <= i, j <= K, of a
/// uniform grid on [0,1]^2. Row i is the x1 index.
class GridField {
public:
    explicit GridField(std::size_t resolution, double fill = 0.0);
    GridField(std::size_t resolution, std::vector<double> values);

    [[nodiscard]] std::size_t resolution() const noexcept { return k_; }
    [[nodiscard]] std::size_t nodes_per_side() const noexcept { return k_ + 1; }
    [[nodiscard]] double spacing() const noexcept { return 1.0 / static_cast<double>(k_); }
    [[nodiscard]] double coordinate(std::size_t index) const noexcept
    {
        return static_cast<double>(index) / static_cast<double>(k_);
    }

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * (k_ + 1) + j]; }
    [[nodiscard]] double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * (k_ + 1) + j]; }

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

    [[nodiscard]] double min_value() const;
    [[nodiscard]] double max_value() const;

    friend bool operator==(const GridField&, const GridField&) = default;

private:
    std::size_t k_;
    std::vector<double> values_;
};

/// (f(x) - f(x - h e_axis)) / h. Throws std::out_of_range on the lower boundary.
[[nodiscard]] double backward_diff(const GridField& f, Node node, Axis axis);
/// (f(x + h e_axis) - f(x)) / h. Throws std::out_of_range on the upper boundary.
[[nodiscard]] double forward_diff(const GridField& f, Node node, Axis axis);

struct Interpolated {
    double value = 0.0;
    bool clamped = false;
};

/// Bilinear interpolation. Queries outside [0,1]^2 are clamped into the box
/// and flagged.
[[nodiscard]] Interpolated interpolate_checked(const GridField& f, Point2 x);
[[nodiscard]] double interpolate(const GridField& f, Point2 x);

// CSV: K+1 rows of K+1 comma-separated values, row i = x1 index. Values use
// the shortest round-trip decimal form.
void write_csv(std::ostream& out, const GridField& f);
[[nodiscard]] GridField read_csv_grid(std::istream& in);

// Binary: K as little-endian uint64, then (K+1)^2 IEEE-754 doubles row-major.
void write_binary(std::ostream& out, const GridField& f);
[[nodiscard]] GridField read_binary_grid(std::istream& in);

/// Format chosen by extension: ".csv" is CSV, anything else binary.
void save_grid(const std::string& path, const GridField& f);
[[nodiscard]] GridField load_grid(const std::string& path);

} // namespace pda

#endif
