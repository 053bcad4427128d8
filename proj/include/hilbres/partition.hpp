/**
 * @file partition.hpp
 * @brief Integer partitions, canonically non-increasing.
 */
#pragma once

#include "error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace hilbres {

class Partition {
public:
    Partition() = default;

    /// Any order is accepted; parts are sorted non-increasing. Parts must be positive.
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_)
            if (p <= 0) throw Error("partition parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    const std::vector<int>& parts() const { return parts_; }
    int total() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    std::size_t length() const { return parts_.size(); }

    /// part value -> multiplicity, the multiset view.
    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int p : parts_) ++m[p];
        return m;
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
        return s + "}";
    }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

} // namespace hilbres
