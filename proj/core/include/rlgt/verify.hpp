#pragma once

// Structural verification: k-disjunctness (exhaustive and sampled), private
// sets, and quantitative zero-error checking.  Exhaustive verdicts are
// ground truth; sampled passes are probabilistic and labeled as such.

#include <cstdint>
#include <optional>
#include <vector>

#include "rlgt/common.hpp"
#include "rlgt/matrix.hpp"

namespace rlgt {

/// A verified counterexample to k-disjunctness: supp(column) is contained in
/// the union of the supports of `covering` (at most k other columns).
struct DisjunctWitness {
    std::uint32_t column = 0;
    std::vector<std::uint32_t> covering;
};

struct DisjunctReport {
    std::uint32_t k = 0;
    bool disjunct = false;
    std::optional<DisjunctWitness> witness;
    std::uint64_t subsets_checked = 0;
    /// True when every (column, k-subset) pair was examined; false for
    /// sampled runs, whose pass verdicts are probabilistic only.
    bool exhaustive = true;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    /// Columns with no 1s (flagged, never silently special-cased; such a
    /// column defeats k-disjunctness for every k >= 1).
    std::vector<std::uint32_t> zero_columns;
};

/// Exhaustive k-disjunctness check: no column's support may be contained in
/// the union of any k other columns' supports.  Examines all n * C(n-1, k)
/// pairs (early-exits on the first witness); throws InfeasibleError if that
/// count exceeds `cap`.
DisjunctReport is_k_disjunct(const TestMatrix& m, std::uint32_t k,
                             std::uint64_t cap = kDefaultCheckCap);

/// Sampled variant: `trials` uniformly random (column, k-subset) pairs.
/// A fail verdict carries a valid witness; a pass verdict only says no
/// witness was sampled.
DisjunctReport is_k_disjunct_sampled(const TestMatrix& m, std::uint32_t k, std::uint64_t trials,
                                     std::uint64_t seed);

/// Smallest set S of rows, all holding a 1 in column j, such that every
/// other column has a 0 in at least one row of S -- the certificate that
/// column j is distinguishable.  Searches subsets of supp(column j) by
/// increasing size up to max_size (lexicographic tie-break); nullopt if none
/// that small exists.  Throws InfeasibleError past `cap` elementary checks.
std::optional<std::vector<std::uint32_t>> find_private_set(const TestMatrix& m, std::uint32_t j,
                                                           std::uint32_t max_size,
                                                           std::uint64_t cap = kDefaultCheckCap);

/// Two distinct supports of the checked weight mode with identical count
/// outcomes.
struct QnagtCollisionWitness {
    SparseSupport first;
    SparseSupport second;
};

struct QnagtReport {
    std::uint32_t k = 0;
    WeightMode mode = WeightMode::exactly_k;
    bool zero_error = false;
    std::optional<QnagtCollisionWitness> witness;
    std::uint64_t pairs_checked = 0;
    std::vector<std::uint32_t> zero_columns;
};

/// Exhaustive zero-error check for the quantitative channel: no two
/// distinct supports of the given weight mode may share a count outcome.
/// Iterates difference patterns -- disjoint index sets (A, B) with the
/// column-sum of A equal to that of B -- rather than raw support pairs,
/// which covers every colliding pair exactly once.  Throws InfeasibleError
/// if the pattern count exceeds `cap`.
QnagtReport qnagt_zero_error_check(const TestMatrix& m, std::uint32_t k, WeightMode mode,
                                   std::uint64_t cap = kDefaultCheckCap);

}  // namespace rlgt
