#ifndef PDA_DYAD_WINDOW_HPP
#define PDA_DYAD_WINDOW_HPP

#include "pda/point_set.hpp"
#include "pda/similarity.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace pda {

/// Windowed history of the last T samples with the dyads of every pair.
///
/// Dyads are cached in a T x T ring so that pushing a sample costs O(T) and
/// the dyads leaving the window are exactly the ones that entered it, even
/// when a measure's behaviour depends on the window contents.
class DyadWindow {
public:
    DyadWindow(std::size_t capacity, MeasureSet measures);
    DyadWindow(const DyadWindow& other);
    DyadWindow& operator=(const DyadWindow& other);
    DyadWindow(DyadWindow&&) noexcept = default;
    DyadWindow& operator=(DyadWindow&&) noexcept = default;
    ~DyadWindow() = default;

    [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] bool full() const noexcept { return size_ == capacity_; }

    /// age 0 is the oldest sample.
    [[nodiscard]] const Sample& sample(std::size_t age) const { return samples_[slot(age)]; }
    [[nodiscard]] Point2 dyad(std::size_t age_a, std::size_t age_b) const
    {
        return dyads_[slot(age_a) * capacity_ + slot(age_b)];
    }

    /// (c1(s, Y), c2(s, Y)) for every window sample Y, oldest first.
    [[nodiscard]] std::vector<Point2> dyads_against(const Sample& s) const;

    struct Update {
        std::vector<Point2> incoming;
        std::vector<Point2> outgoing;
    };

    /// Appends s, evicting the oldest sample first when full.
    Update push(const Sample& s);
    /// Same as push(s) with dyads_against(s) already computed.
    Update push(const Sample& s, std::span<const Point2> dyads);

    /// All size*(size-1)/2 dyads of the window.
    [[nodiscard]] std::vector<Point2> all_dyads() const;

    [[nodiscard]] std::size_t num_measures() const noexcept { return measures_.size(); }
    [[nodiscard]] SimilarityMeasure& measure(std::size_t i) { return *measures_.at(i); }
    [[nodiscard]] const SimilarityMeasure& measure(std::size_t i) const { return *measures_.at(i); }

private:
    [[nodiscard]] std::size_t slot(std::size_t age) const noexcept { return (head_ + age) % capacity_; }

    std::size_t capacity_;
    std::size_t head_ = 0;
    std::size_t size_ = 0;
    MeasureSet measures_;
    std::vector<Sample> samples_;
    std::vector<Point2> dyads_;
};

} // namespace pda

#endif
