// Copyright the docguard authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "docguard/common.hpp"

namespace docguard {

/// Sparse vector in term-index space. Entries are kept sorted by index and
/// never hold a zero weight.
class SparseVector {
public:
    using Entry = std::pair<std::uint32_t, double>;

    SparseVector() = default;

    explicit SparseVector(std::vector<Entry> entries) {
        std::sort(entries.begin(), entries.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
        entries_.reserve(entries.size());
        for (const Entry& e : entries) {
            if (!entries_.empty() && entries_.back().first == e.first)
                throw Error("SparseVector: duplicate index");
            if (e.second != 0.0) entries_.push_back(e);
        }
    }

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }

    double at(std::uint32_t index) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                                   [](const Entry& e, std::uint32_t i) { return e.first < i; });
        return (it != entries_.end() && it->first == index) ? it->second : 0.0;
    }

    double dot(const SparseVector& other) const {
        double sum = 0.0;
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() && b != other.entries_.end()) {
            if (a->first < b->first) {
                ++a;
            } else if (b->first < a->first) {
                ++b;
            } else {
                sum += a->second * b->second;
                ++a;
                ++b;
            }
        }
        return sum;
    }

    double norm_squared() const {
        double sum = 0.0;
        for (const Entry& e : entries_) sum += e.second * e.second;
        return sum;
    }

    double norm() const { return std::sqrt(norm_squared()); }

    SparseVector& scale(double factor) {
        for (Entry& e : entries_) e.second *= factor;
        prune();
        return *this;
    }

    /// Scale to unit Euclidean length. A zero vector is left as-is.
    SparseVector& normalize() {
        const double n = norm();
        if (n > 0.0) {
            for (Entry& e : entries_) e.second /= n;
        }
        return *this;
    }

    SparseVector& add(const SparseVector& other) {
        std::vector<Entry> merged;
        merged.reserve(entries_.size() + other.entries_.size());
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() || b != other.entries_.end()) {
            if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                merged.push_back(*a++);
            } else if (a == entries_.end() || b->first < a->first) {
                merged.push_back(*b++);
            } else {
                const double w = a->second + b->second;
                if (w != 0.0) merged.emplace_back(a->first, w);
                ++a;
                ++b;
            }
        }
        entries_ = std::move(merged);
        return *this;
    }

    bool operator==(const SparseVector& other) const { return entries_ == other.entries_; }

private:
    void prune() {
        entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                      [](const Entry& e) { return e.second == 0.0; }),
                       entries_.end());
    }

    std::vector<Entry> entries_;
};

/// dot(a,b) / (|a| |b|); zero whenever either norm is zero.
inline double cosine_similarity(const SparseVector& a, const SparseVector& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return a.dot(b) / (na * nb);
}

}  // namespace docguard
