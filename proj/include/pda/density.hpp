#ifndef PDA_DENSITY_HPP
#define PDA_DENSITY_HPP

#include "pda/grid_field.hpp"
#include "pda/point_set.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pda {

struct Bin {
    std::size_t i = 0;
    std::size_t j = 0;
    friend bool operator==(const Bin&, const Bin&) = default;
};

/// Histogram estimate of the dyad density on [0,1]^2 with K x K half-open
/// bins [i h, (i+1) h) x [j h, (j+1) h) (0-based); coordinate 1.0 falls in the
/// last bin. Supports the O(T) add/remove update used while a window slides.
class StreamingDensity {
public:
    explicit StreamingDensity(std::size_t resolution, std::size_t window = 0);

    /// Histogram of all dyads. Dyads outside the box are clamped in and
    /// counted once. Throws on an empty input.
    static StreamingDensity build(std::span<const Point2> dyads, std::size_t resolution, std::size_t window = 0);

    [[nodiscard]] std::size_t resolution() const noexcept { return k_; }
    [[nodiscard]] double spacing() const noexcept { return 1.0 / static_cast<double>(k_); }
    [[nodiscard]] std::size_t window() const noexcept { return window_; }
    void set_window(std::size_t window) noexcept { window_ = window; }
    [[nodiscard]] std::int64_t total() const noexcept { return total_; }

    [[nodiscard]] std::int64_t count(Bin b) const { return counts_.at(b.i * k_ + b.j); }
    [[nodiscard]] const std::vector<std::int64_t>& counts() const noexcept { return counts_; }

    /// counts / (total h^2); zero everywhere while empty.
    [[nodiscard]] double density(Bin b) const;

    [[nodiscard]] Bin bin_of(Point2 x) const;
    [[nodiscard]] std::size_t clamped_count() const noexcept { return clamped_; }

    void add(Point2 dyad);
    /// Throws std::logic_error if the bin is already empty.
    void remove(Point2 dyad);

    /// Adds every incoming dyad and removes every outgoing one. If a removal
    /// would drive a bin negative the update is rolled back and
    /// std::logic_error is thrown.
    void slide(std::span<const Point2> incoming, std::span<const Point2> outgoing);

    /// Node field f + h^2 with node (i, j), i, j >= 1, reading bin (i-1, j-1)
    /// and boundary nodes copying the adjacent bin. Not renormalised.
    [[nodiscard]] GridField preconditioned() const;

    /// Same node sampling without the h^2 floor.
    [[nodiscard]] GridField node_density() const;

    friend bool operator==(const StreamingDensity& a, const StreamingDensity& b)
    {
        return a.k_ == b.k_ && a.total_ == b.total_ && a.counts_ == b.counts_;
    }

private:
    friend StreamingDensity load_density(const std::string&, const std::string&);

    std::size_t k_;
    std::size_t window_;
    std::int64_t total_ = 0;
    std::size_t clamped_ = 0;
    std::vector<std::int64_t> counts_;
};

/// Writes the node density through save_grid() plus a JSON sidecar holding
/// {"K", "T", "total"} at `sidecar_path`.
void save_density(const StreamingDensity& density, const std::string& grid_path, const std::string& sidecar_path);
[[nodiscard]] StreamingDensity load_density(const std::string& grid_path, const std::string& sidecar_path);

} // namespace pda

#endif
