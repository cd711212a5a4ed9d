#include "shellsort_lab/core_model.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "shellsort_lab/numeric.hpp"

namespace shellsort_lab {

KeyArray::KeyArray(std::vector<Key> keys) : keys_(std::move(keys)) {
    std::vector<Key> sorted = keys_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("KeyArray: keys must be pairwise distinct");
    }
}

KeyArray::KeyArray(std::initializer_list<Key> keys) : KeyArray(std::vector<Key>(keys)) {}

KeyArray KeyArray::identity(std::size_t n) {
    std::vector<Key> keys(n);
    std::iota(keys.begin(), keys.end(), Key{0});
    return KeyArray(std::move(keys));
}

IncrementPlan::IncrementPlan(std::int64_t h, std::int64_t g, std::int64_t c) : h_(h), g_(g), c_(c) {
    if (g < 1 || h <= g) {
        throw std::invalid_argument("IncrementPlan: need h > g >= 1, got h=" + std::to_string(h) +
                                    " g=" + std::to_string(g));
    }
    if (c < 1) {
        throw std::invalid_argument("IncrementPlan: scale factor c must be >= 1");
    }
    require_coprime(h, g, "IncrementPlan");
}

std::uint64_t stride_sort_in_place(std::span<Key> keys, std::size_t step) {
    if (step == 0) {
        throw std::invalid_argument("stride_sort: step must be positive");
    }
    const std::size_t n = keys.size();
    std::uint64_t moves = 0;
    for (std::size_t i = step; i < n; ++i) {
        const Key x = keys[i];
        std::size_t j = i;
        while (j >= step && keys[j - step] > x) {
            keys[j] = keys[j - step];
            j -= step;
            ++moves;
        }
        keys[j] = x;
    }
    return moves;
}

StrideSortResult stride_sort(const KeyArray& a, std::size_t step) {
    std::vector<Key> keys = a.vector();
    const std::uint64_t moves = stride_sort_in_place(keys, step);
    return {KeyArray(std::move(keys)), moves};
}

namespace {

// Bottom-up merge sort of `keys`, counting for each element of a right run the
// elements of the left run that exceed it.
std::uint64_t merge_count(std::vector<Key>& keys) {
    const std::size_t n = keys.size();
    std::vector<Key> buffer(n);
    std::uint64_t inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo;
            std::size_t j = mid;
            std::size_t out = lo;
            while (i < mid && j < hi) {
                if (keys[j] < keys[i]) {
                    inversions += mid - i;
                    buffer[out++] = keys[j++];
                } else {
                    buffer[out++] = keys[i++];
                }
            }
            while (i < mid) buffer[out++] = keys[i++];
            while (j < hi) buffer[out++] = keys[j++];
        }
        keys.swap(buffer);
    }
    return inversions;
}

}  // namespace

std::uint64_t count_inversions(std::span<const Key> keys) {
    // n(n-1)/2 must fit in 64 bits.
    constexpr std::uint64_t max_len = 6'074'001'000ULL;
    if (keys.size() > max_len) {
        throw std::overflow_error("count_inversions: inversion count may exceed 64 bits");
    }
    std::vector<Key> work(keys.begin(), keys.end());
    return merge_count(work);
}

std::uint64_t count_inversions(const KeyArray& a) { return count_inversions(a.keys()); }

std::vector<Key> interleave(std::span<const Key> first, std::span<const Key> second) {
    std::vector<Key> out;
    out.reserve(first.size() + second.size());
    const std::size_t common = std::min(first.size(), second.size());
    for (std::size_t r = 0; r < common; ++r) {
        out.push_back(first[r]);
        out.push_back(second[r]);
    }
    out.insert(out.end(), first.begin() + static_cast<std::ptrdiff_t>(common), first.end());
    out.insert(out.end(), second.begin() + static_cast<std::ptrdiff_t>(common), second.end());
    return out;
}

std::uint64_t interleaved_inversions(std::span<const Key> first, std::span<const Key> second) {
    const auto diff = first.size() > second.size() ? first.size() - second.size()
                                                   : second.size() - first.size();
    if (diff > 1) {
        throw std::invalid_argument("interleaved_inversions: list lengths differ by more than one");
    }
    if (!std::is_sorted(first.begin(), first.end()) || !std::is_sorted(second.begin(), second.end())) {
        throw std::invalid_argument("interleaved_inversions: both lists must be increasing");
    }
    std::uint64_t total = 0;
    std::size_t s = 0;
    for (std::size_t r = 0; r < first.size(); ++r) {
        while (s < second.size() && second[s] < first[r]) ++s;
        if (s < second.size() && second[s] == first[r]) {
            throw std::invalid_argument("interleaved_inversions: elements must be distinct");
        }
        total += r > s ? r - s : s - r;
    }
    return total;
}

PassesResult run_passes(const KeyArray& a, const IncrementPlan& plan) {
    std::vector<Key> keys = a.vector();
    PassesResult result;
    result.costs.pass1 = stride_sort_in_place(keys, plan.first_step());
    result.after_first = KeyArray(keys);
    result.costs.pass2 = stride_sort_in_place(keys, plan.second_step());
    result.after_second = KeyArray(keys);
    result.costs.pass3 = stride_sort_in_place(keys, 1);
    result.costs.total = result.costs.pass1 + result.costs.pass2 + result.costs.pass3;
    result.sorted = KeyArray(std::move(keys));
    return result;
}

}  // namespace shellsort_lab
