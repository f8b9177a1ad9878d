#include "pda/dyad_window.hpp"

#include <algorithm>
#include <stdexcept>

namespace pda {

DyadWindow::DyadWindow(std::size_t capacity, MeasureSet measures)
    : capacity_(capacity)
    , measures_(std::move(measures))
{
    if (capacity < 2) {
        throw std::invalid_argument("DyadWindow: capacity must be at least 2");
    }
    if (measures_.size() != 2) {
        throw std::invalid_argument("DyadWindow: exactly two similarity measures are supported");
    }
    samples_.resize(capacity_);
    dyads_.assign(capacity_ * capacity_, Point2{0.0, 0.0});
}

DyadWindow::DyadWindow(const DyadWindow& other)
    : capacity_(other.capacity_)
    , head_(other.head_)
    , size_(other.size_)
    , measures_(clone_measures(other.measures_))
    , samples_(other.samples_)
    , dyads_(other.dyads_)
{
}

DyadWindow& DyadWindow::operator=(const DyadWindow& other)
{
    if (this != &other) {
        DyadWindow copy(other);
        *this = std::move(copy);
    }
    return *this;
}

std::vector<Point2> DyadWindow::dyads_against(const Sample& s) const
{
    std::vector<Point2> out(size_);
    for (std::size_t age = 0; age < size_; ++age) {
        const Sample& y = samples_[slot(age)];
        out[age] = {std::clamp(measures_[0]->compare(s, y), 0.0, 1.0), std::clamp(measures_[1]->compare(s, y), 0.0, 1.0)};
    }
    return out;
}

DyadWindow::Update DyadWindow::push(const Sample& s) { return push(s, dyads_against(s)); }

DyadWindow::Update DyadWindow::push(const Sample& s, std::span<const Point2> dyads)
{
    if (dyads.size() != size_) {
        throw std::invalid_argument("DyadWindow::push: expected one dyad per window sample");
    }
    Update update;
    std::size_t first_kept = 0;
    if (full()) {
        const std::size_t old = slot(0);
        update.outgoing.reserve(size_ - 1);
        for (std::size_t age = 1; age < size_; ++age) {
            update.outgoing.push_back(dyads_[old * capacity_ + slot(age)]);
        }
        for (auto& m : measures_) {
            m->evict(samples_[old]);
        }
        head_ = (head_ + 1) % capacity_;
        --size_;
        first_kept = 1;
    }

    const std::size_t fresh = slot(size_);
    samples_[fresh] = s;
    update.incoming.reserve(size_);
    for (std::size_t age = 0; age < size_; ++age) {
        const Point2 z = dyads[age + first_kept];
        const std::size_t other = slot(age);
        dyads_[fresh * capacity_ + other] = z;
        dyads_[other * capacity_ + fresh] = z;
        update.incoming.push_back(z);
    }
    dyads_[fresh * capacity_ + fresh] = {0.0, 0.0};
    ++size_;
    for (auto& m : measures_) {
        m->admit(s);
    }
    return update;
}

std::vector<Point2> DyadWindow::all_dyads() const
{
    std::vector<Point2> out;
    out.reserve(size_ * (size_ - (size_ > 0 ? 1 : 0)) / 2);
    for (std::size_t a = 0; a < size_; ++a) {
        const std::size_t sa = slot(a);
        for (std::size_t b = a + 1; b < size_; ++b) {
            out.push_back(dyads_[sa * capacity_ + slot(b)]);
        }
    }
    return out;
}

} // namespace pda
