#include "pda/point_set.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pda {

namespace {
    void check_finite(std::span<const double> values)
    {
        for (double v : values) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("PointSet: non-finite coordinate");
            }
        }
    }
} // namespace

PointSet::PointSet(std::size_t dim)
    : dim_(dim)
{
    if (dim < 2) {
        throw std::invalid_argument("PointSet: dimension must be at least 2, got " + std::to_string(dim));
    }
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : PointSet(dim)
{
    if (coords.size() % dim != 0) {
        throw std::invalid_argument("PointSet: coordinate count is not a multiple of the dimension");
    }
    check_finite(coords);
    coords_ = std::move(coords);
}

PointSet PointSet::from_rows(std::span<const std::vector<double>> rows)
{
    if (rows.empty()) {
        throw std::invalid_argument("PointSet::from_rows: cannot infer dimension from zero rows");
    }
    PointSet ps(rows.front().size());
    ps.reserve(rows.size());
    for (const auto& row : rows) {
        ps.push_back(row);
    }
    return ps;
}

PointSet PointSet::from_points(std::span<const Point2> points)
{
    std::vector<double> coords;
    coords.reserve(points.size() * 2);
    for (const auto& p : points) {
        coords.push_back(p[0]);
        coords.push_back(p[1]);
    }
    return PointSet(2, std::move(coords));
}

void PointSet::push_back(std::span<const double> point)
{
    if (point.size() != dim_) {
        throw std::invalid_argument("PointSet::push_back: expected " + std::to_string(dim_) + " coordinates, got "
                                    + std::to_string(point.size()));
    }
    check_finite(point);
    coords_.insert(coords_.end(), point.begin(), point.end());
}

bool dominates(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("dominates: dimension mismatch");
    }
    bool strictly_smaller_somewhere = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        strictly_smaller_somewhere |= a[i] < b[i];
    }
    return strictly_smaller_somewhere;
}

} // namespace pda
