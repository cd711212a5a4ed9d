#pragma once

// Inversion bookkeeping for an array that has been h-sorted and then g-sorted.
//
// For 0 <= k < h and 0 <= l < n, y(k, l) counts the elements X[k'] with
// k' = k (mod h) and X[k'] < X[l]; j(k, l) = (k + h * y(k, l)) mod g. After
// g-sorting, X[l] lands in list j(l mod h, l). For a pair of lists j < j' the
// H-set collects the residues met while stepping from j to j' by h (mod g),
// and Q_l counts the k with j(k, l) in H. The identity
//
//     S(j, l) - S(j', l) = Q_l - floor(h d / g)
//
// relates these tables to S(j, l), the number of elements of list j below
// X[l]; summing |Q_l - floor(h d / g)| over the l that land in list j gives
// the inversions between the two lists.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "shellsort_lab/core_model.hpp"

namespace shellsort_lab {

/// Dense row-major h x n table of small nonnegative integers.
class CountTable {
public:
    CountTable() = default;
    CountTable(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::int64_t operator()(std::size_t k, std::size_t l) const { return data_[k * cols_ + l]; }
    std::int64_t& operator()(std::size_t k, std::size_t l) { return data_[k * cols_ + l]; }

    std::span<const std::int64_t> row(std::size_t k) const {
        return std::span<const std::int64_t>(data_).subspan(k * cols_, cols_);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

struct PassTables {
    std::int64_t h = 0;
    std::int64_t g = 0;
    CountTable y;
    CountTable j;

    std::size_t n() const noexcept { return y.cols(); }
    /// The list that X[l] joins after g-sorting.
    std::int64_t list_of(std::size_t l) const { return j(l % static_cast<std::size_t>(h), l); }
};

struct HSet {
    std::int64_t j = 0;
    std::int64_t j_prime = 0;
    std::int64_t d = 0;
    std::vector<std::int64_t> members;  // j_1, ..., j_d in stepping order

    bool contains(std::int64_t residue) const;
};

/// Throws std::invalid_argument unless gcd(h, g) = 1.
PassTables build_tables(const KeyArray& a, std::int64_t h, std::int64_t g);

/// Requires 0 <= j < j' < g and gcd(h, g) = 1.
HSet h_set(std::int64_t j, std::int64_t j_prime, std::int64_t h, std::int64_t g);

std::vector<std::int64_t> compute_q(const PassTables& tables, const HSet& hs);

/// How many of 0 mod g, 1 mod g, ..., (h-1) mod g fall in H(j, j').
std::int64_t multiset_membership_count(std::int64_t j, std::int64_t j_prime, std::int64_t h,
                                       std::int64_t g);

/// Inversions between lists j and j' of the g-sorted array, via the Q counts.
std::uint64_t cross_list_inversions(const PassTables& tables, std::int64_t j, std::int64_t j_prime);
std::uint64_t cross_list_inversions(const KeyArray& a, std::int64_t h, std::int64_t g, std::int64_t j,
                                    std::int64_t j_prime);

/// Sum of cross_list_inversions over every pair j < j'.
std::uint64_t total_cross_list_inversions(const PassTables& tables);

/// The g lists X''[j], X''[j+g], ... of the array after h-sorting then g-sorting.
std::vector<std::vector<Key>> g_sorted_lists(const KeyArray& a, std::int64_t h, std::int64_t g);

struct Violation {
    enum class Kind { list_difference, cross_list_count };

    Kind kind = Kind::list_difference;
    std::int64_t j = 0;
    std::int64_t j_prime = 0;
    std::int64_t l = -1;  // -1 for per-pair checks
    std::int64_t expected = 0;
    std::int64_t actual = 0;
};

struct VerificationReport {
    static constexpr std::size_t max_listed = 100;

    std::uint64_t checks = 0;
    std::uint64_t violation_count = 0;
    std::vector<Violation> violations;  // first max_listed only

    bool ok() const noexcept { return violation_count == 0; }
    void record(const Violation& v);
    void merge(const VerificationReport& other);
};

/// Checks S(j, l) - S(j', l) = Q_l - floor(hd/g) for all j < j' and all l,
/// with S counted directly from the g-sorted lists.
VerificationReport verify_lemma1(const KeyArray& a, std::int64_t h, std::int64_t g);

/// Checks the Q-based cross-list count against a direct pairwise count for
/// every pair of lists.
VerificationReport verify_cross_list_counts(const KeyArray& a, std::int64_t h, std::int64_t g);

}  // namespace shellsort_lab
