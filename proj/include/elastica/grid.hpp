#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace elastica {

/// Dense node-by-step table. Row j holds the time series of node j,
/// so a node's history is contiguous.
class Grid {
public:
    Grid() = default;
    Grid(std::size_t nodes, std::size_t steps, double fill = 0.0)
        : nodes_(nodes), steps_(steps), data_(nodes * steps, fill) {}

    std::size_t nodes() const noexcept { return nodes_; }
    std::size_t steps() const noexcept { return steps_; }

    double& operator()(std::size_t node, std::size_t step) noexcept { return data_[node * steps_ + step]; }
    double operator()(std::size_t node, std::size_t step) const noexcept { return data_[node * steps_ + step]; }

    std::span<const double> row(std::size_t node) const noexcept {
        return {data_.data() + node * steps_, steps_};
    }
    std::span<double> row(std::size_t node) noexcept { return {data_.data() + node * steps_, steps_}; }

    std::span<const double> flat() const noexcept { return data_; }

    bool same_shape(const Grid& other) const noexcept {
        return nodes_ == other.nodes_ && steps_ == other.steps_;
    }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t nodes_ = 0;
    std::size_t steps_ = 0;
    std::vector<double> data_;
};

}  // namespace elastica
