#pragma once

// Binary test-matrix representation, outcome computation, and constraint
// checking.
//
// A TestMatrix is a t x n binary pooling design: rows are tests, columns are
// items, entry (i, j) = 1 means item j participates in test i.  Storage is
// bit-packed row-major; a column-view accessor materializes single columns
// for the verification kernels.  Matrices are immutable after construction
// and safe to share across threads.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rlgt/bitvec.hpp"
#include "rlgt/common.hpp"

namespace rlgt {

/// A set of defective item indices: the support of a sparse 0/1 vector over
/// a universe of n items.  Indices are kept strictly increasing.
class SparseSupport {
public:
    SparseSupport(std::uint32_t n, std::vector<std::uint32_t> indices);
    static SparseSupport empty(std::uint32_t n) { return {n, {}}; }

    std::uint32_t universe() const { return n_; }
    std::uint32_t weight() const { return static_cast<std::uint32_t>(indices_.size()); }
    const std::vector<std::uint32_t>& indices() const { return indices_; }
    bool contains(std::uint32_t item) const;

    friend bool operator==(const SparseSupport&, const SparseSupport&) = default;

private:
    std::uint32_t n_;
    std::vector<std::uint32_t> indices_;
};

/// Test results: boolean per-test indicators (OR channel) or nonnegative
/// per-test counts (quantitative channel).
struct Outcome {
    enum class Kind { boolean, count };

    Kind kind = Kind::boolean;
    std::vector<std::uint32_t> values;

    std::uint32_t length() const { return static_cast<std::uint32_t>(values.size()); }

    /// Rows with a positive entry, as a bit vector (the support of y).
    BitVec positive_rows() const;
};

/// Where a column first violates a runlength requirement: rows row_a < row_b
/// both hold a 1 with fewer than `gap` zeros between them.  For a cyclic
/// violation the pair is (last 1-row, first 1-row) and wraparound = true.
struct RunlengthViolation {
    std::uint32_t column = 0;
    std::uint32_t row_a = 0;
    std::uint32_t row_b = 0;
    bool wraparound = false;
};

/// First column whose weight exceeds a cap.
struct WeightViolation {
    std::uint32_t column = 0;
    std::uint32_t weight = 0;
};

enum class RunMode { linear, cyclic };

class TestMatrix {
public:
    /// Builds a matrix from bit-packed rows (words_per_row() words per row,
    /// low bit of word 0 = column 0).  Claims, when set, are validated here;
    /// a violated claim is rejected with std::invalid_argument.
    TestMatrix(std::uint32_t t, std::uint32_t n, std::vector<std::uint64_t> row_words,
               std::optional<std::uint32_t> runlength_claim = std::nullopt,
               std::optional<std::uint32_t> weight_claim = std::nullopt);

    /// All-zero matrix.
    static TestMatrix zeros(std::uint32_t t, std::uint32_t n);
    /// n x n identity.
    static TestMatrix identity(std::uint32_t n);
    /// From per-row strings of '0'/'1' characters.
    static TestMatrix from_rows(const std::vector<std::string>& rows,
                                std::optional<std::uint32_t> runlength_claim = std::nullopt,
                                std::optional<std::uint32_t> weight_claim = std::nullopt);
    /// From per-column supports (row indices holding a 1), ascending or not.
    static TestMatrix from_columns(std::uint32_t t,
                                   const std::vector<std::vector<std::uint32_t>>& column_supports,
                                   std::optional<std::uint32_t> runlength_claim = std::nullopt,
                                   std::optional<std::uint32_t> weight_claim = std::nullopt);

    std::uint32_t rows() const { return t_; }
    std::uint32_t cols() const { return n_; }
    std::uint32_t words_per_row() const { return words_per_row_; }

    bool at(std::uint32_t row, std::uint32_t col) const {
        return (row_words_[std::size_t{row} * words_per_row_ + (col >> 6)] >> (col & 63)) & 1u;
    }
    std::span<const std::uint64_t> row_span(std::uint32_t row) const {
        return {row_words_.data() + std::size_t{row} * words_per_row_, words_per_row_};
    }

    /// Materializes column j as a t-bit vector.
    BitVec column(std::uint32_t j) const;
    /// All columns at once (the verification kernels' working form).
    std::vector<BitVec> columns() const;
    std::uint32_t column_weight(std::uint32_t j) const;
    std::uint32_t max_column_weight() const;
    /// Columns with no 1 at all; such columns can never be disambiguated by
    /// any decoder, so verifiers surface them.
    std::vector<std::uint32_t> all_zero_columns() const;

    std::optional<std::uint32_t> runlength_claim() const { return runlength_claim_; }
    std::optional<std::uint32_t> weight_claim() const { return weight_claim_; }
    /// Same bits with different claim metadata (revalidated).
    TestMatrix with_claims(std::optional<std::uint32_t> runlength_claim,
                           std::optional<std::uint32_t> weight_claim) const;

    friend bool operator==(const TestMatrix& a, const TestMatrix& b) {
        return a.t_ == b.t_ && a.n_ == b.n_ && a.row_words_ == b.row_words_ &&
               a.runlength_claim_ == b.runlength_claim_ && a.weight_claim_ == b.weight_claim_;
    }

private:
    std::uint32_t t_;
    std::uint32_t n_;
    std::uint32_t words_per_row_;
    std::vector<std::uint64_t> row_words_;
    std::optional<std::uint32_t> runlength_claim_;
    std::optional<std::uint32_t> weight_claim_;
};

/// y[i] = OR over j in x of M[i][j].  Empty support gives the all-zero
/// outcome.
Outcome or_outcome(const TestMatrix& m, const SparseSupport& x);

/// y[i] = number of j in x with M[i][j] = 1.
Outcome count_outcome(const TestMatrix& m, const SparseSupport& x);

/// Checks that every column keeps at least `gap` zeros between any two 1s:
/// consecutive 1-rows p < q need q - p >= gap + 1, and cyclic mode also
/// requires (t - q + p) >= gap + 1 for the last/first pair.  gap = 0 always
/// passes.  Returns the first violation in (column, row) order, or nullopt.
std::optional<RunlengthViolation> check_runlength(const TestMatrix& m, std::uint32_t gap,
                                                  RunMode mode = RunMode::linear);

/// Checks every column weight <= max_weight; returns the first offender.
std::optional<WeightViolation> check_weight(const TestMatrix& m, std::uint32_t max_weight);

/// Appends the fewest all-zero rows (0..gap of them) so that gap+1 divides
/// the row count.  Constraint status of every column is unchanged.
TestMatrix pad_to_divisible(const TestMatrix& m, std::uint32_t gap);

// --- text serialization -----------------------------------------------------
//
// Matrix file format (bit-exact): first line "t n d w" as space-separated
// decimal integers with -1 for an unset claim; then t lines of exactly n
// characters from {0,1}; every line ends with LF; no trailing whitespace.

std::string to_text(const TestMatrix& m);
TestMatrix from_text(std::string_view text);
TestMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const TestMatrix& m);

// Outcome file format: one line of space-separated integers (booleans as
// 0/1), LF-terminated.
std::string to_text(const Outcome& y);
Outcome outcome_from_text(std::string_view text, Outcome::Kind kind);
Outcome read_outcome_file(const std::string& path, Outcome::Kind kind);

}  // namespace rlgt
