#pragma once

// Arrays, increment plans and the passes of (ch, cg, 1)-shellsort, with exact
// cost accounting and inversion counting.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace shellsort_lab {

using Key = std::int64_t;

/// A sequence of pairwise distinct keys. The canonical form used by the
/// experiments is a permutation of {0, ..., n-1}, but any distinct values work.
class KeyArray {
public:
    KeyArray() = default;

    /// Throws std::invalid_argument if two keys are equal.
    explicit KeyArray(std::vector<Key> keys);
    KeyArray(std::initializer_list<Key> keys);

    /// The identity permutation (0, 1, ..., n-1).
    static KeyArray identity(std::size_t n);

    std::size_t size() const noexcept { return keys_.size(); }
    bool empty() const noexcept { return keys_.empty(); }
    Key operator[](std::size_t i) const { return keys_[i]; }

    std::span<const Key> keys() const noexcept { return keys_; }
    const std::vector<Key>& vector() const noexcept { return keys_; }

    auto begin() const noexcept { return keys_.begin(); }
    auto end() const noexcept { return keys_.end(); }

    friend bool operator==(const KeyArray&, const KeyArray&) = default;

private:
    std::vector<Key> keys_;
};

/// Increments (c*h, c*g, 1) with gcd(h, g) = 1 and h > g >= 1.
class IncrementPlan {
public:
    /// Throws std::invalid_argument when the invariants do not hold.
    IncrementPlan(std::int64_t h, std::int64_t g, std::int64_t c = 1);

    std::int64_t h() const noexcept { return h_; }
    std::int64_t g() const noexcept { return g_; }
    std::int64_t c() const noexcept { return c_; }

    std::size_t first_step() const noexcept { return static_cast<std::size_t>(c_ * h_); }
    std::size_t second_step() const noexcept { return static_cast<std::size_t>(c_ * g_); }

private:
    std::int64_t h_;
    std::int64_t g_;
    std::int64_t c_;
};

struct PassCosts {
    std::uint64_t pass1 = 0;
    std::uint64_t pass2 = 0;
    std::uint64_t pass3 = 0;
    std::uint64_t total = 0;

    friend bool operator==(const PassCosts&, const PassCosts&) = default;
};

struct StrideSortResult {
    KeyArray sorted;
    std::uint64_t moves = 0;
};

struct PassesResult {
    KeyArray after_first;
    KeyArray after_second;
    KeyArray sorted;
    PassCosts costs;
};

/// Straight insertion sort on every chain a[j], a[j+step], ... in place.
/// Returns the number of element shifts, which equals the number of
/// inversions inside the chains before sorting.
std::uint64_t stride_sort_in_place(std::span<Key> keys, std::size_t step);

StrideSortResult stride_sort(const KeyArray& a, std::size_t step);

/// Merge-based O(n log n) inversion count.
std::uint64_t count_inversions(std::span<const Key> keys);
std::uint64_t count_inversions(const KeyArray& a);

/// (first[0], second[0], first[1], second[1], ...), leftovers appended.
std::vector<Key> interleave(std::span<const Key> first, std::span<const Key> second);

/// Inversions of interleave(first, second) for two increasing lists whose
/// lengths differ by at most one, as the sum over r of |r - s_r| where s_r
/// counts the elements of `second` below first[r].
std::uint64_t interleaved_inversions(std::span<const Key> first, std::span<const Key> second);

/// Applies the three passes c*h, c*g, 1 and records the shifts of each.
PassesResult run_passes(const KeyArray& a, const IncrementPlan& plan);

}  // namespace shellsort_lab
