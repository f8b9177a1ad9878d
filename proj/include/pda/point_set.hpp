#ifndef PDA_POINT_SET_HPP
#define PDA_POINT_SET_HPP

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace pda {

using Point2 = std::array<double, 2>;

/// A finite collection of points in R^d stored row-major.
///
/// Coordinates must be finite and d >= 2. Points are not required to lie in
/// the unit box; dominance only looks at the coordinatewise order.
class PointSet {
public:
    explicit PointSet(std::size_t dim);
    PointSet(std::size_t dim, std::vector<double> coords);

    static PointSet from_rows(std::span<const std::vector<double>> rows);
    static PointSet from_points(std::span<const Point2> points);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    [[nodiscard]] bool empty() const noexcept { return coords_.empty(); }

    [[nodiscard]] std::span<const double> operator[](std::size_t i) const
    {
        return {coords_.data() + i * dim_, dim_};
    }

    [[nodiscard]] const std::vector<double>& coords() const noexcept { return coords_; }

    void push_back(std::span<const double> point);
    void reserve(std::size_t n) { coords_.reserve(n * dim_); }

private:
    std::size_t dim_;
    std::vector<double> coords_;
};

/// True iff a <= b coordinatewise and a != b.
[[nodiscard]] bool dominates(std::span<const double> a, std::span<const double> b);

} // namespace pda

#endif
