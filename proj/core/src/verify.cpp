#include "rlgt/verify.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "combinatorics.hpp"
#include "rlgt/bitvec.hpp"
#include "rlgt/rng.hpp"

namespace rlgt {

namespace {

using detail::add_clamped;
using detail::choose_clamped;
using detail::first_combination;
using detail::mul_clamped;
using detail::next_combination;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

// --- k-disjunctness ---------------------------------------------------------

DisjunctReport is_k_disjunct(const TestMatrix& m, std::uint32_t k, std::uint64_t cap) {
    if (k < 1) bad("is_k_disjunct: k must be >= 1");
    const std::uint32_t n = m.cols();

    DisjunctReport report;
    report.k = k;
    report.exhaustive = true;
    report.zero_columns = m.all_zero_columns();

    // Containment by fewer than k columns implies containment by k, so
    // checking subsets of size exactly s = min(k, n-1) is exhaustive.
    const std::uint32_t s = std::min(k, n - 1);
    if (s == 0) {  // single column: no other columns to cover it
        report.disjunct = true;
        return report;
    }

    const std::uint64_t pair_count =
        mul_clamped(choose_clamped(n, s, cap), n - s, cap);
    if (pair_count > cap)
        throw InfeasibleError("is_k_disjunct: " + std::to_string(n) + " * C(n-1," +
                              std::to_string(s) + ") containment checks exceed cap " +
                              std::to_string(cap));

    const std::vector<BitVec> cols = m.columns();
    BitVec acc(m.rows());
    std::vector<std::uint32_t> idx;
    first_combination(idx, s);
    do {
        auto words = acc.words();
        std::fill(words.begin(), words.end(), 0);
        for (std::uint32_t j : idx) acc |= cols[j];
        // Check every column outside the subset against the union.
        std::uint32_t next_in = 0;
        for (std::uint32_t j = 0; j < n; ++j) {
            if (next_in < s && idx[next_in] == j) {
                ++next_in;
                continue;
            }
            ++report.subsets_checked;
            if (cols[j].is_subset_of(acc)) {
                report.disjunct = false;
                report.witness = DisjunctWitness{j, idx};
                return report;
            }
        }
    } while (next_combination(idx, n));

    report.disjunct = true;
    return report;
}

DisjunctReport is_k_disjunct_sampled(const TestMatrix& m, std::uint32_t k, std::uint64_t trials,
                                     std::uint64_t seed) {
    if (k < 1) bad("is_k_disjunct_sampled: k must be >= 1");
    if (trials < 1) bad("is_k_disjunct_sampled: trials must be >= 1");
    const std::uint32_t n = m.cols();

    DisjunctReport report;
    report.k = k;
    report.exhaustive = false;
    report.trials = trials;
    report.seed = seed;
    report.zero_columns = m.all_zero_columns();

    const std::uint32_t s = std::min(k, n - 1);
    if (s == 0) {
        report.disjunct = true;
        return report;
    }

    const std::vector<BitVec> cols = m.columns();
    BitVec acc(m.rows());
    std::vector<std::uint32_t> pool(n);
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, trial));
        const auto j = static_cast<std::uint32_t>(rng.below(n));
        // Uniform s-subset of [n] \ {j} via partial Fisher-Yates.
        for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
        std::swap(pool[j], pool[n - 1]);
        for (std::uint32_t i = 0; i < s; ++i) {
            const auto r = i + static_cast<std::uint32_t>(rng.below(n - 1 - i));
            std::swap(pool[i], pool[r]);
        }

        auto words = acc.words();
        std::fill(words.begin(), words.end(), 0);
        for (std::uint32_t i = 0; i < s; ++i) acc |= cols[pool[i]];
        ++report.subsets_checked;
        if (cols[j].is_subset_of(acc)) {
            std::vector<std::uint32_t> covering(pool.begin(), pool.begin() + s);
            std::sort(covering.begin(), covering.end());
            report.disjunct = false;
            report.witness = DisjunctWitness{j, std::move(covering)};
            return report;
        }
    }
    report.disjunct = true;
    return report;
}

// --- private sets -----------------------------------------------------------

std::optional<std::vector<std::uint32_t>> find_private_set(const TestMatrix& m, std::uint32_t j,
                                                           std::uint32_t max_size,
                                                           std::uint64_t cap) {
    if (j >= m.cols()) bad("find_private_set: column index out of range");
    const std::vector<std::uint32_t> rows = m.column(j).set_bits();
    if (rows.empty()) return std::nullopt;

    // If some other column has a 1 in every row of supp(column j), no subset
    // can exclude it: no private set of any size exists.
    const std::uint32_t n = m.cols();
    std::vector<std::vector<bool>> covers(n);
    for (std::uint32_t other = 0; other < n; ++other) {
        if (other == j) continue;
        covers[other].resize(rows.size());
        bool full = true;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            covers[other][i] = m.at(rows[i], other);
            full = full && covers[other][i];
        }
        if (full) return std::nullopt;
    }

    std::uint64_t checks = 0;
    std::vector<std::uint32_t> idx;
    const auto limit = static_cast<std::uint32_t>(
        std::min<std::size_t>(max_size, rows.size()));
    for (std::uint32_t size = 1; size <= limit; ++size) {
        first_combination(idx, size);
        do {
            bool works = true;
            for (std::uint32_t other = 0; other < n && works; ++other) {
                if (other == j) continue;
                if (++checks > cap)
                    throw InfeasibleError("find_private_set: check count exceeds cap");
                bool excluded = false;
                for (std::uint32_t pos : idx) {
                    if (!covers[other][pos]) {
                        excluded = true;
                        break;
                    }
                }
                works = excluded;
            }
            if (works) {
                std::vector<std::uint32_t> out;
                out.reserve(size);
                for (std::uint32_t pos : idx) out.push_back(rows[pos]);
                return out;
            }
        } while (next_combination(idx, static_cast<std::uint32_t>(rows.size())));
    }
    return std::nullopt;
}

// --- quantitative zero-error ------------------------------------------------

namespace {

/// Signed per-row accumulator with O(touched) reset, for comparing two
/// column sums without scanning all t rows per pair.
class DiffAccumulator {
public:
    explicit DiffAccumulator(std::uint32_t t) : acc_(t, 0) {}

    void apply(const std::vector<std::uint32_t>& support, int delta) {
        for (std::uint32_t row : support) {
            const int old = acc_[row];
            if (old == 0) {
                ++nonzero_;
                touched_.push_back(row);
            }
            acc_[row] = old + delta;
            if (acc_[row] == 0) --nonzero_;
        }
    }

    bool balanced() const { return nonzero_ == 0; }

    void clear() {
        for (std::uint32_t row : touched_) acc_[row] = 0;
        touched_.clear();
        nonzero_ = 0;
    }

private:
    std::vector<int> acc_;
    std::vector<std::uint32_t> touched_;
    int nonzero_ = 0;
};

/// Unordered disjoint pairs (A, B) with |A| = |B| = l over [n]: choose the
/// 2l union positions, then split.  C(2l, l) is even for l >= 1, so halving
/// the split factor first keeps the clamped arithmetic exact.
std::uint64_t equal_size_pairs(std::uint32_t n, std::uint32_t l, std::uint64_t cap) {
    const std::uint64_t unions = choose_clamped(n, 2ull * l, cap);
    // Saturate the split factor at 2cap+2 so that halving it still lands
    // strictly above cap when the true value does.
    const std::uint64_t splits = choose_clamped(2ull * l, l, 2 * cap + 1) / 2;
    return mul_clamped(unions, splits, cap);
}

std::uint64_t count_difference_patterns(std::uint32_t n, std::uint32_t k, WeightMode mode,
                                        std::uint64_t cap) {
    std::uint64_t total = 0;
    if (mode == WeightMode::exactly_k) {
        for (std::uint32_t l = 1; l <= std::min(k, n - k); ++l) {
            total = add_clamped(total, equal_size_pairs(n, l, cap), cap);
            if (total > cap) return total;
        }
        return total;
    }
    for (std::uint32_t la = 1; la <= k; ++la) {
        for (std::uint32_t lb = 0; lb < la; ++lb) {
            if (std::uint64_t{la} + lb > n) continue;
            const std::uint64_t pairs =
                mul_clamped(choose_clamped(n, la, cap), choose_clamped(n - la, lb, cap), cap);
            total = add_clamped(total, pairs, cap);
            if (total > cap) return total;
        }
        if (2ull * la <= n) total = add_clamped(total, equal_size_pairs(n, la, cap), cap);
        if (total > cap) return total;
    }
    return total;
}

}  // namespace

QnagtReport qnagt_zero_error_check(const TestMatrix& m, std::uint32_t k, WeightMode mode,
                                   std::uint64_t cap) {
    if (k < 1 || k > m.cols()) bad("qnagt_zero_error_check: need 1 <= k <= n");
    const std::uint32_t n = m.cols();

    QnagtReport report;
    report.k = k;
    report.mode = mode;
    report.zero_columns = m.all_zero_columns();

    if (count_difference_patterns(n, k, mode, cap) > cap)
        throw InfeasibleError("qnagt_zero_error_check: difference-pattern count exceeds cap " +
                              std::to_string(cap));

    std::vector<std::vector<std::uint32_t>> supports(n);
    for (std::uint32_t j = 0; j < n; ++j) supports[j] = m.column(j).set_bits();

    DiffAccumulator acc(m.rows());

    // Builds the colliding support pair for a difference pattern (A, B): in
    // exactly-k mode both sides are completed with the smallest k-|A| indices
    // outside A and B; in at-most-k mode the pattern itself is the pair.
    const auto make_witness = [&](const std::vector<std::uint32_t>& a,
                                  const std::vector<std::uint32_t>& b) {
        std::vector<std::uint32_t> first(a), second(b);
        if (mode == WeightMode::exactly_k) {
            std::vector<bool> used(n, false);
            for (std::uint32_t x : a) used[x] = true;
            for (std::uint32_t x : b) used[x] = true;
            std::uint32_t need = k - static_cast<std::uint32_t>(a.size());
            for (std::uint32_t x = 0; x < n && need > 0; ++x) {
                if (!used[x]) {
                    first.push_back(x);
                    second.push_back(x);
                    --need;
                }
            }
        }
        report.witness = QnagtCollisionWitness{SparseSupport(n, std::move(first)),
                                               SparseSupport(n, std::move(second))};
    };

    std::vector<std::uint32_t> idx_a, idx_b, complement, a, b;
    const std::uint32_t la_max = (mode == WeightMode::exactly_k) ? std::min(k, n - k) : k;
    for (std::uint32_t la = 1; la <= la_max; ++la) {
        const std::uint32_t lb_lo = (mode == WeightMode::exactly_k) ? la : 0;
        for (std::uint32_t lb = lb_lo; lb <= la; ++lb) {
            if (std::uint64_t{la} + lb > n) continue;
            first_combination(idx_a, la);
            do {
                a.assign(idx_a.begin(), idx_a.end());
                complement.clear();
                std::uint32_t next_in = 0;
                for (std::uint32_t x = 0; x < n; ++x) {
                    if (next_in < la && idx_a[next_in] == x) {
                        ++next_in;
                        continue;
                    }
                    complement.push_back(x);
                }
                first_combination(idx_b, lb);
                do {
                    b.clear();
                    for (std::uint32_t pos : idx_b) b.push_back(complement[pos]);
                    // Unordered pairs of equal size are seen twice; keep the
                    // orientation whose smallest index is on the A side.
                    if (la == lb && !b.empty() && b[0] < a[0]) continue;
                    ++report.pairs_checked;
                    acc.clear();
                    for (std::uint32_t j : a) acc.apply(supports[j], +1);
                    for (std::uint32_t j : b) acc.apply(supports[j], -1);
                    if (acc.balanced()) {
                        report.zero_error = false;
                        make_witness(a, b);
                        return report;
                    }
                } while (next_combination(idx_b, static_cast<std::uint32_t>(complement.size())));
            } while (next_combination(idx_a, n));
        }
    }

    report.zero_error = true;
    return report;
}

}  // namespace rlgt
