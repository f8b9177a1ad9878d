#include "pda/density.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pda {

StreamingDensity::StreamingDensity(std::size_t resolution, std::size_t window)
    : k_(resolution)
    , window_(window)
{
    if (resolution < 2) {
        throw std::invalid_argument("StreamingDensity: resolution must be at least 2");
    }
    counts_.assign(k_ * k_, 0);
}

StreamingDensity StreamingDensity::build(std::span<const Point2> dyads, std::size_t resolution, std::size_t window)
{
    if (dyads.empty()) {
        throw std::invalid_argument("StreamingDensity::build: no dyads");
    }
    StreamingDensity d(resolution, window);
    for (const auto& x : dyads) {
        d.add(x);
    }
    return d;
}

double StreamingDensity::density(Bin b) const
{
    if (total_ == 0) {
        return 0.0;
    }
    const double h = spacing();
    return static_cast<double>(count(b)) / (static_cast<double>(total_) * h * h);
}

Bin StreamingDensity::bin_of(Point2 x) const
{
    auto index = [this](double c) {
        if (std::isnan(c)) {
            throw std::invalid_argument("StreamingDensity: NaN dyad coordinate");
        }
        const double s = std::floor(std::clamp(c, 0.0, 1.0) * static_cast<double>(k_));
        return std::min(static_cast<std::size_t>(s), k_ - 1);
    };
    return {index(x[0]), index(x[1])};
}

void StreamingDensity::add(Point2 dyad)
{
    if (dyad[0] < 0.0 || dyad[0] > 1.0 || dyad[1] < 0.0 || dyad[1] > 1.0) {
        ++clamped_;
    }
    const Bin b = bin_of(dyad);
    ++counts_[b.i * k_ + b.j];
    ++total_;
}

void StreamingDensity::remove(Point2 dyad)
{
    const Bin b = bin_of(dyad);
    auto& c = counts_[b.i * k_ + b.j];
    if (c == 0) {
        throw std::logic_error("StreamingDensity::remove: bin count would become negative");
    }
    --c;
    --total_;
}

void StreamingDensity::slide(std::span<const Point2> incoming, std::span<const Point2> outgoing)
{
    for (const auto& x : incoming) {
        add(x);
    }
    std::size_t removed = 0;
    try {
        for (const auto& x : outgoing) {
            remove(x);
            ++removed;
        }
    } catch (const std::logic_error&) {
        for (std::size_t r = 0; r < removed; ++r) {
            add(outgoing[r]);
        }
        for (const auto& x : incoming) {
            remove(x);
        }
        throw;
    }
}

GridField StreamingDensity::node_density() const
{
    GridField f(k_);
    for (std::size_t i = 0; i <= k_; ++i) {
        for (std::size_t j = 0; j <= k_; ++j) {
            f(i, j) = density({i == 0 ? 0 : i - 1, j == 0 ? 0 : j - 1});
        }
    }
    return f;
}

GridField StreamingDensity::preconditioned() const
{
    GridField f = node_density();
    const double h = spacing();
    for (std::size_t i = 0; i <= k_; ++i) {
        for (std::size_t j = 0; j <= k_; ++j) {
            f(i, j) += h * h;
        }
    }
    return f;
}

void save_density(const StreamingDensity& density, const std::string& grid_path, const std::string& sidecar_path)
{
    save_grid(grid_path, density.node_density());
    nlohmann::json meta = {
        {"K", density.resolution()},
        {"T", density.window()},
        {"total", density.total()},
    };
    std::ofstream out(sidecar_path);
    if (!out) {
        throw std::runtime_error("cannot open " + sidecar_path + " for writing");
    }
    out << meta.dump(2) << '\n';
}

StreamingDensity load_density(const std::string& grid_path, const std::string& sidecar_path)
{
    std::ifstream in(sidecar_path);
    if (!in) {
        throw std::runtime_error("cannot open " + sidecar_path);
    }
    const auto meta = nlohmann::json::parse(in);
    const auto k = meta.at("K").get<std::size_t>();
    const auto total = meta.at("total").get<std::int64_t>();
    const GridField f = load_grid(grid_path);
    if (f.resolution() != k) {
        throw std::runtime_error("load_density: grid resolution does not match sidecar");
    }
    StreamingDensity d(k, meta.value("T", std::size_t{0}));
    const double h = d.spacing();
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const double c = f(i + 1, j + 1) * static_cast<double>(total) * h * h;
            const auto rounded = static_cast<std::int64_t>(std::llround(c));
            if (rounded < 0 || std::abs(c - static_cast<double>(rounded)) > 1e-6 * std::max(1.0, c)) {
                throw std::runtime_error("load_density: grid values are not a histogram of the stated total");
            }
            d.counts_[i * k + j] = rounded;
            sum += rounded;
        }
    }
    if (sum != total) {
        throw std::runtime_error("load_density: bin counts do not sum to the stated total");
    }
    d.total_ = total;
    return d;
}

} // namespace pda
