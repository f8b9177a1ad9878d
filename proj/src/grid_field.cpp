#include "pda/grid_field.hpp"

#include "pda/csv.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace pda {

static_assert(std::endian::native == std::endian::little, "binary grid format assumes a little-endian host");

GridField::GridField(std::size_t resolution, double fill)
    : k_(resolution)
{
    if (resolution < 2) {
        throw std::invalid_argument("GridField: resolution must be at least 2");
    }
    if (!std::isfinite(fill)) {
        throw std::invalid_argument("GridField: non-finite fill value");
    }
    values_.assign((k_ + 1) * (k_ + 1), fill);
}

GridField::GridField(std::size_t resolution, std::vector<double> values)
    : k_(resolution)
{
    if (resolution < 2) {
        throw std::invalid_argument("GridField: resolution must be at least 2");
    }
    if (values.size() != (k_ + 1) * (k_ + 1)) {
        throw std::invalid_argument("GridField: expected (K+1)^2 values");
    }
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        throw std::invalid_argument("GridField: non-finite value");
    }
    values_ = std::move(values);
}

double GridField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double GridField::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double backward_diff(const GridField& f, Node node, Axis axis)
{
    const std::size_t k = f.resolution();
    if (node.i > k || node.j > k) {
        throw std::out_of_range("backward_diff: node outside grid");
    }
    if (axis == Axis::x1) {
        if (node.i == 0) {
            throw std::out_of_range("backward_diff: no western neighbour");
        }
        return (f(node.i, node.j) - f(node.i - 1, node.j)) * static_cast<double>(k);
    }
    if (node.j == 0) {
        throw std::out_of_range("backward_diff: no southern neighbour");
    }
    return (f(node.i, node.j) - f(node.i, node.j - 1)) * static_cast<double>(k);
}

double forward_diff(const GridField& f, Node node, Axis axis)
{
    const std::size_t k = f.resolution();
    if (node.i > k || node.j > k) {
        throw std::out_of_range("forward_diff: node outside grid");
    }
    if (axis == Axis::x1) {
        if (node.i == k) {
            throw std::out_of_range("forward_diff: no eastern neighbour");
        }
        return (f(node.i + 1, node.j) - f(node.i, node.j)) * static_cast<double>(k);
    }
    if (node.j == k) {
        throw std::out_of_range("forward_diff: no northern neighbour");
    }
    return (f(node.i, node.j + 1) - f(node.i, node.j)) * static_cast<double>(k);
}

Interpolated interpolate_checked(const GridField& f, Point2 x)
{
    Interpolated out;
    for (double& c : x) {
        if (std::isnan(c)) {
            throw std::invalid_argument("interpolate: NaN coordinate");
        }
        if (c < 0.0 || c > 1.0) {
            c = std::clamp(c, 0.0, 1.0);
            out.clamped = true;
        }
    }
    const std::size_t k = f.resolution();
    // Snap queries that land on a node up to rounding so nodes reproduce exactly.
    auto scaled = [k](double c) {
        const double s = c * static_cast<double>(k);
        const double r = std::round(s);
        return std::abs(s - r) <= 1e-12 * static_cast<double>(k) ? r : s;
    };
    const double s1 = scaled(x[0]);
    const double s2 = scaled(x[1]);
    const std::size_t i = std::min(static_cast<std::size_t>(s1), k - 1);
    const std::size_t j = std::min(static_cast<std::size_t>(s2), k - 1);
    const double a = s1 - static_cast<double>(i);
    const double b = s2 - static_cast<double>(j);

    out.value = (1.0 - a) * ((1.0 - b) * f(i, j) + b * f(i, j + 1)) + a * ((1.0 - b) * f(i + 1, j) + b * f(i + 1, j + 1));
    return out;
}

double interpolate(const GridField& f, Point2 x) { return interpolate_checked(f, x).value; }

void write_csv(std::ostream& out, const GridField& f)
{
    const std::size_t m = f.nodes_per_side();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_double(f(i, j));
        }
        out << '\n';
    }
}

GridField read_csv_grid(std::istream& in)
{
    auto table = read_csv_table(in, /*has_header=*/false);
    const std::size_t m = table.rows.size();
    if (m < 3) {
        throw std::invalid_argument("read_csv_grid: need at least 3 rows");
    }
    std::vector<double> values;
    values.reserve(m * m);
    for (const auto& row : table.rows) {
        if (row.size() != m) {
            throw std::invalid_argument("read_csv_grid: grid is not square");
        }
        for (const auto& cell : row) {
            values.push_back(parse_double(cell));
        }
    }
    return GridField(m - 1, std::move(values));
}

void write_binary(std::ostream& out, const GridField& f)
{
    const auto k = static_cast<std::uint64_t>(f.resolution());
    out.write(reinterpret_cast<const char*>(&k), sizeof k);
    auto values = f.values();
    out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!out) {
        throw std::runtime_error("write_binary: stream error");
    }
}

GridField read_binary_grid(std::istream& in)
{
    std::uint64_t k = 0;
    if (!in.read(reinterpret_cast<char*>(&k), sizeof k)) {
        throw std::runtime_error("read_binary_grid: truncated header");
    }
    if (k < 2 || k > (1u << 16)) {
        throw std::runtime_error("read_binary_grid: implausible resolution");
    }
    std::vector<double> values((k + 1) * (k + 1));
    if (!in.read(reinterpret_cast<char*>(values.data()), static_cast<std::streamsize>(values.size() * sizeof(double)))) {
        throw std::runtime_error("read_binary_grid: truncated payload");
    }
    return GridField(static_cast<std::size_t>(k), std::move(values));
}

namespace {
    bool is_csv_path(const std::string& path) { return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0; }
} // namespace

void save_grid(const std::string& path, const GridField& f)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    if (is_csv_path(path)) {
        write_csv(out, f);
    } else {
        write_binary(out, f);
    }
}

GridField load_grid(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return is_csv_path(path) ? read_csv_grid(in) : read_binary_grid(in);
}

} // namespace pda
