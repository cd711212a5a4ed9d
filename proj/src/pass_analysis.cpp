#include "shellsort_lab/pass_analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "shellsort_lab/numeric.hpp"

namespace shellsort_lab {

bool HSet::contains(std::int64_t residue) const {
    return std::find(members.begin(), members.end(), residue) != members.end();
}

PassTables build_tables(const KeyArray& a, std::int64_t h, std::int64_t g) {
    if (h < 1 || g < 1) {
        throw std::invalid_argument("build_tables: h and g must be positive");
    }
    require_coprime(h, g, "build_tables");

    const std::size_t n = a.size();
    const auto rows = static_cast<std::size_t>(h);
    PassTables t{h, g, CountTable(rows, n), CountTable(rows, n)};

    std::vector<Key> chain;
    for (std::size_t k = 0; k < rows; ++k) {
        chain.clear();
        for (std::size_t i = k; i < n; i += rows) chain.push_back(a[i]);
        std::sort(chain.begin(), chain.end());
        for (std::size_t l = 0; l < n; ++l) {
            const auto below = std::lower_bound(chain.begin(), chain.end(), a[l]) - chain.begin();
            t.y(k, l) = below;
            t.j(k, l) = pos_mod(static_cast<std::int64_t>(k) + h * below, g);
        }
    }
    return t;
}

HSet h_set(std::int64_t j, std::int64_t j_prime, std::int64_t h, std::int64_t g) {
    if (!(0 <= j && j < j_prime && j_prime < g)) {
        throw std::invalid_argument("h_set: need 0 <= j < j' < g");
    }
    require_coprime(h, g, "h_set");

    HSet hs{j, j_prime, 0, {}};
    std::int64_t current = j;
    while (current != j_prime) {
        current = pos_mod(current + h, g);
        hs.members.push_back(current);
    }
    hs.d = static_cast<std::int64_t>(hs.members.size());
    return hs;
}

std::vector<std::int64_t> compute_q(const PassTables& tables, const HSet& hs) {
    std::vector<char> in_h(static_cast<std::size_t>(tables.g), 0);
    for (auto m : hs.members) in_h[static_cast<std::size_t>(m)] = 1;

    const std::size_t n = tables.n();
    std::vector<std::int64_t> q(n, 0);
    for (std::size_t k = 0; k < tables.j.rows(); ++k) {
        const auto row = tables.j.row(k);
        for (std::size_t l = 0; l < n; ++l) q[l] += in_h[static_cast<std::size_t>(row[l])];
    }
    return q;
}

std::int64_t multiset_membership_count(std::int64_t j, std::int64_t j_prime, std::int64_t h,
                                       std::int64_t g) {
    const HSet hs = h_set(j, j_prime, h, g);
    std::vector<char> in_h(static_cast<std::size_t>(g), 0);
    for (auto m : hs.members) in_h[static_cast<std::size_t>(m)] = 1;
    std::int64_t count = 0;
    for (std::int64_t k = 0; k < h; ++k) count += in_h[static_cast<std::size_t>(k % g)];
    return count;
}

std::uint64_t cross_list_inversions(const PassTables& tables, std::int64_t j, std::int64_t j_prime) {
    const HSet hs = h_set(j, j_prime, tables.h, tables.g);
    const std::vector<std::int64_t> q = compute_q(tables, hs);
    const std::int64_t base = floor_div(tables.h * hs.d, tables.g);
    std::uint64_t total = 0;
    for (std::size_t l = 0; l < tables.n(); ++l) {
        if (tables.list_of(l) == j) total += static_cast<std::uint64_t>(std::llabs(q[l] - base));
    }
    return total;
}

std::uint64_t cross_list_inversions(const KeyArray& a, std::int64_t h, std::int64_t g, std::int64_t j,
                                    std::int64_t j_prime) {
    return cross_list_inversions(build_tables(a, h, g), j, j_prime);
}

std::uint64_t total_cross_list_inversions(const PassTables& tables) {
    std::uint64_t total = 0;
    for (std::int64_t j = 0; j < tables.g; ++j) {
        for (std::int64_t jp = j + 1; jp < tables.g; ++jp) total += cross_list_inversions(tables, j, jp);
    }
    return total;
}

std::vector<std::vector<Key>> g_sorted_lists(const KeyArray& a, std::int64_t h, std::int64_t g) {
    std::vector<Key> keys = a.vector();
    stride_sort_in_place(keys, static_cast<std::size_t>(h));
    stride_sort_in_place(keys, static_cast<std::size_t>(g));
    std::vector<std::vector<Key>> lists(static_cast<std::size_t>(g));
    for (std::size_t i = 0; i < keys.size(); ++i) lists[i % lists.size()].push_back(keys[i]);
    return lists;
}

void VerificationReport::record(const Violation& v) {
    ++violation_count;
    if (violations.size() < max_listed) violations.push_back(v);
}

void VerificationReport::merge(const VerificationReport& other) {
    checks += other.checks;
    for (const auto& v : other.violations) {
        if (violations.size() < max_listed) violations.push_back(v);
    }
    violation_count += other.violation_count;
}

VerificationReport verify_lemma1(const KeyArray& a, std::int64_t h, std::int64_t g) {
    const PassTables tables = build_tables(a, h, g);
    const std::size_t n = a.size();

    // S(j, l): elements of list j smaller than X[l], counted from the lists.
    std::vector<std::vector<Key>> lists = g_sorted_lists(a, h, g);
    CountTable s(static_cast<std::size_t>(g), n);
    for (std::size_t j = 0; j < lists.size(); ++j) {
        std::vector<Key> sorted = lists[j];
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t l = 0; l < n; ++l) {
            s(j, l) = std::lower_bound(sorted.begin(), sorted.end(), a[l]) - sorted.begin();
        }
    }

    VerificationReport report;
    for (std::int64_t j = 0; j < g; ++j) {
        for (std::int64_t jp = j + 1; jp < g; ++jp) {
            const HSet hs = h_set(j, jp, h, g);
            const std::vector<std::int64_t> q = compute_q(tables, hs);
            const std::int64_t base = floor_div(h * hs.d, g);
            for (std::size_t l = 0; l < n; ++l) {
                ++report.checks;
                const std::int64_t lhs = s(static_cast<std::size_t>(j), l) - s(static_cast<std::size_t>(jp), l);
                const std::int64_t rhs = q[l] - base;
                if (lhs != rhs) {
                    report.record({Violation::Kind::list_difference, j, jp, static_cast<std::int64_t>(l), lhs,
                                   rhs});
                }
            }
        }
    }
    return report;
}

VerificationReport verify_cross_list_counts(const KeyArray& a, std::int64_t h, std::int64_t g) {
    const PassTables tables = build_tables(a, h, g);
    const std::vector<std::vector<Key>> lists = g_sorted_lists(a, h, g);

    VerificationReport report;
    for (std::int64_t j = 0; j < g; ++j) {
        for (std::int64_t jp = j + 1; jp < g; ++jp) {
            // List j precedes list j' position by position: element r of list j
            // sits before element q of list j' exactly when r <= q.
            const auto& first = lists[static_cast<std::size_t>(j)];
            const auto& second = lists[static_cast<std::size_t>(jp)];
            std::int64_t direct = 0;
            for (std::size_t r = 0; r < first.size(); ++r) {
                for (std::size_t q = 0; q < second.size(); ++q) {
                    if ((r <= q) == (first[r] > second[q])) ++direct;
                }
            }
            const auto via_q = static_cast<std::int64_t>(cross_list_inversions(tables, j, jp));
            ++report.checks;
            if (direct != via_q) report.record({Violation::Kind::cross_list_count, j, jp, -1, direct, via_q});
        }
    }
    return report;
}

}  // namespace shellsort_lab
