#pragma once

// Matrix constructions: the runlength-constrained random design, the spacer
// embedding, i.i.d. Bernoulli matrices, and the weight-constrained
// quantitative design.
//
// Determinism contract: every construction derives one RNG substream per
// column (derive_seed(seed, column)), so the output is identical no matter
// how generation is ordered or parallelized.

#include <cstdint>
#include <optional>
#include <vector>

#include "rlgt/matrix.hpp"
#include "rlgt/rng.hpp"

namespace rlgt {

/// One experiment's full configuration.  d is the runlength gap (boolean
/// channel); w is the column-weight cap (quantitative channel); exactly one
/// of them is normally set.  c_t scales t when t is derived from a formula
/// rather than given; delta and gamma are the quantitative construction's
/// constants.
struct SchemeParams {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::optional<std::uint32_t> d;
    std::optional<std::uint32_t> w;
    std::uint32_t t = 0;
    std::uint32_t alpha = 0;
    std::uint64_t seed = 0;
    double c_t = 1.0;
    double delta = 0.25;
    double gamma = 0.5;

    /// Validates the invariants needed by the runlength construction:
    /// 1 <= k <= n, t >= 1, and 1 <= alpha <= floor(t / (2d+1)).
    /// Throws std::invalid_argument on violation.
    void validate_for_rand_matrix() const;
};

/// Per-column weight used by the runlength construction when none is given:
/// min(max(1, ceil(k*log2(n/k))), floor(t/(2d+1))).  The clamp guarantees
/// the construction's own precondition.
std::uint32_t default_alpha(std::uint32_t n, std::uint32_t k, std::uint32_t t, std::uint32_t d);

/// Incremental sampler behind the runlength construction.  Maintains the
/// sorted list of row indices still available for a 1.  Each pick is uniform
/// over the live set; afterwards the picked index and its d nearest live
/// neighbors on each side -- nearest in the current list order, cyclically,
/// not in absolute index distance -- are removed.  When 2d+1 or fewer
/// entries remain, a pick clears the whole list.
///
/// Invariants maintained: any two picked indices are at least d+1 apart
/// cyclically in [t]; every index within cyclic distance d of a picked index
/// has been removed from the live set.
class ColumnSampler {
public:
    ColumnSampler(std::uint32_t t, std::uint32_t d);

    /// Uniform pick via rng; returns the picked row.
    std::uint32_t pick(Rng& rng);
    /// Deterministic pick of a specific live row (test hook; throws if the
    /// row is not live).
    std::uint32_t pick_row(std::uint32_t row);

    std::uint32_t live_count() const { return live_count_; }
    std::uint32_t picks() const { return picks_; }
    /// Live rows in increasing order (test hook).
    std::vector<std::uint32_t> live_sorted() const;

    /// Restores the full live set for the next column, reusing buffers.
    void reset();

private:
    void remove_row(std::uint32_t row);

    std::uint32_t t_;
    std::uint32_t d_;
    std::uint32_t live_count_;
    std::uint32_t picks_ = 0;
    std::vector<std::uint32_t> next_;   // cyclic successor in sorted live order
    std::vector<std::uint32_t> prev_;   // cyclic predecessor
    std::vector<std::uint32_t> live_;   // live rows, arbitrary order (for uniform picks)
    std::vector<std::uint32_t> slot_;   // slot_[row] = position of row in live_
    std::vector<std::uint32_t> scratch_;
};

/// One column of the runlength construction: exactly alpha ones, any two at
/// least d+1 apart cyclically.  Requires alpha <= floor(t/(2d+1)) so the
/// live list cannot empty early (each pick removes at most 2d+1 entries).
/// Returns the sorted row support.
std::vector<std::uint32_t> rand_matrix_column(std::uint32_t t, std::uint32_t d,
                                              std::uint32_t alpha, Rng& rng);

/// The runlength-constrained random design: n independent columns via
/// rand_matrix_column, column j seeded with derive_seed(params.seed, j).
/// Output deterministically passes the cyclic runlength check for d and has
/// every column weight exactly alpha; both claims are recorded on the
/// returned matrix.  threads > 1 parallelizes column generation without
/// changing the output.
TestMatrix rand_matrix(const SchemeParams& params, unsigned threads = 1);

/// Spacer embedding: inserts `gap` all-zero rows between every two rows of
/// the base, giving t = (gap+1)*t' - gap rows with base row i at output row
/// i*(gap+1).  The output passes the linear runlength check for `gap` no
/// matter what the base is, and inherits the base's disjunctness (zero-row
/// insertion changes no column support relations).
TestMatrix spacer_embed(const TestMatrix& base, std::uint32_t gap);

/// i.i.d. Bernoulli(p) matrix with per-column substreams.
TestMatrix bernoulli_matrix(std::uint32_t t, std::uint32_t n, double p, std::uint64_t seed);

/// Test count used by the weight-constrained quantitative construction:
/// ceil((2 + 1/delta + gamma) * k * (1 + log2(n/k)) / log2(w)).
std::uint32_t qnagt_tests(std::uint32_t n, std::uint32_t k, std::uint32_t w, double delta,
                          double gamma);

struct QnagtConstruction {
    TestMatrix matrix;
    std::uint32_t t = 0;
    double p = 0.0;           // per-entry density w/(2t)
    std::uint32_t attempts = 1;
};

/// Weight-constrained quantitative design: t = qnagt_tests(...), entries
/// i.i.d. Bernoulli(w/(2t)); resamples with a fresh derived seed until every
/// column weight is <= w (rarely more than once).  Throws InfeasibleError
/// naming the offending column if max_attempts resamples all fail.
QnagtConstruction qnagt_construct(std::uint32_t n, std::uint32_t k, std::uint32_t w, double delta,
                                  double gamma, std::uint64_t seed,
                                  std::uint32_t max_attempts = 64);

}  // namespace rlgt
