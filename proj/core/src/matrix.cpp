#include "rlgt/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rlgt {

namespace {

std::uint32_t words_for(std::uint32_t bits) { return (bits + 63) / 64; }

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

// --- SparseSupport ----------------------------------------------------------

SparseSupport::SparseSupport(std::uint32_t n, std::vector<std::uint32_t> indices)
    : n_(n), indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        bad("SparseSupport: duplicate index");
    if (!indices_.empty() && indices_.back() >= n_)
        bad("SparseSupport: index out of range");
}

bool SparseSupport::contains(std::uint32_t item) const {
    return std::binary_search(indices_.begin(), indices_.end(), item);
}

// --- Outcome ----------------------------------------------------------------

BitVec Outcome::positive_rows() const {
    BitVec v(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] > 0) v.set(i);
    return v;
}

// --- TestMatrix -------------------------------------------------------------

TestMatrix::TestMatrix(std::uint32_t t, std::uint32_t n, std::vector<std::uint64_t> row_words,
                       std::optional<std::uint32_t> runlength_claim,
                       std::optional<std::uint32_t> weight_claim)
    : t_(t), n_(n), words_per_row_(words_for(n)), row_words_(std::move(row_words)),
      runlength_claim_(runlength_claim), weight_claim_(weight_claim) {
    if (t_ == 0 || n_ == 0) bad("TestMatrix: dimensions must be positive");
    if (row_words_.size() != std::size_t{t_} * words_per_row_)
        bad("TestMatrix: word buffer size does not match dimensions");
    // Zero any stray bits beyond column n-1 so whole-word ops need no masks.
    const std::uint32_t tail_bits = n_ & 63;
    if (tail_bits != 0) {
        const std::uint64_t mask = (std::uint64_t{1} << tail_bits) - 1;
        for (std::uint32_t i = 0; i < t_; ++i)
            row_words_[std::size_t{i} * words_per_row_ + words_per_row_ - 1] &= mask;
    }
    if (runlength_claim_) {
        if (auto v = check_runlength(*this, *runlength_claim_, RunMode::linear))
            bad("TestMatrix: runlength claim violated at column " + std::to_string(v->column));
    }
    if (weight_claim_) {
        if (auto v = check_weight(*this, *weight_claim_))
            bad("TestMatrix: weight claim violated at column " + std::to_string(v->column));
    }
}

TestMatrix TestMatrix::zeros(std::uint32_t t, std::uint32_t n) {
    return TestMatrix(t, n, std::vector<std::uint64_t>(std::size_t{t} * words_for(n), 0));
}

TestMatrix TestMatrix::identity(std::uint32_t n) {
    std::vector<std::uint64_t> words(std::size_t{n} * words_for(n), 0);
    for (std::uint32_t i = 0; i < n; ++i)
        words[std::size_t{i} * words_for(n) + (i >> 6)] |= std::uint64_t{1} << (i & 63);
    return TestMatrix(n, n, std::move(words));
}

TestMatrix TestMatrix::from_rows(const std::vector<std::string>& rows,
                                 std::optional<std::uint32_t> runlength_claim,
                                 std::optional<std::uint32_t> weight_claim) {
    if (rows.empty()) bad("from_rows: no rows");
    const auto t = static_cast<std::uint32_t>(rows.size());
    const auto n = static_cast<std::uint32_t>(rows[0].size());
    std::vector<std::uint64_t> words(std::size_t{t} * words_for(n), 0);
    for (std::uint32_t i = 0; i < t; ++i) {
        if (rows[i].size() != n) bad("from_rows: ragged rows");
        for (std::uint32_t j = 0; j < n; ++j) {
            const char c = rows[i][j];
            if (c == '1')
                words[std::size_t{i} * words_for(n) + (j >> 6)] |= std::uint64_t{1} << (j & 63);
            else if (c != '0')
                bad("from_rows: entry must be '0' or '1'");
        }
    }
    return TestMatrix(t, n, std::move(words), runlength_claim, weight_claim);
}

TestMatrix TestMatrix::from_columns(std::uint32_t t,
                                    const std::vector<std::vector<std::uint32_t>>& column_supports,
                                    std::optional<std::uint32_t> runlength_claim,
                                    std::optional<std::uint32_t> weight_claim) {
    if (column_supports.empty()) bad("from_columns: no columns");
    const auto n = static_cast<std::uint32_t>(column_supports.size());
    std::vector<std::uint64_t> words(std::size_t{t} * words_for(n), 0);
    for (std::uint32_t j = 0; j < n; ++j) {
        for (std::uint32_t row : column_supports[j]) {
            if (row >= t) bad("from_columns: row index out of range");
            words[std::size_t{row} * words_for(n) + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        }
    }
    return TestMatrix(t, n, std::move(words), runlength_claim, weight_claim);
}

BitVec TestMatrix::column(std::uint32_t j) const {
    BitVec v(t_);
    for (std::uint32_t i = 0; i < t_; ++i)
        if (at(i, j)) v.set(i);
    return v;
}

std::vector<BitVec> TestMatrix::columns() const {
    std::vector<BitVec> out(n_, BitVec(t_));
    for (std::uint32_t i = 0; i < t_; ++i) {
        const auto row = row_span(i);
        for (std::uint32_t wi = 0; wi < words_per_row_; ++wi) {
            std::uint64_t w = row[wi];
            while (w) {
                const int b = std::countr_zero(w);
                out[std::size_t{wi} * 64 + b].set(i);
                w &= w - 1;
            }
        }
    }
    return out;
}

std::uint32_t TestMatrix::column_weight(std::uint32_t j) const {
    std::uint32_t c = 0;
    for (std::uint32_t i = 0; i < t_; ++i) c += at(i, j);
    return c;
}

std::uint32_t TestMatrix::max_column_weight() const {
    std::vector<std::uint32_t> weights(n_, 0);
    for (std::uint32_t i = 0; i < t_; ++i) {
        const auto row = row_span(i);
        for (std::uint32_t wi = 0; wi < words_per_row_; ++wi) {
            std::uint64_t w = row[wi];
            while (w) {
                const int b = std::countr_zero(w);
                ++weights[std::size_t{wi} * 64 + b];
                w &= w - 1;
            }
        }
    }
    return weights.empty() ? 0 : *std::max_element(weights.begin(), weights.end());
}

std::vector<std::uint32_t> TestMatrix::all_zero_columns() const {
    BitVec seen(n_);
    for (std::uint32_t i = 0; i < t_; ++i) {
        const auto row = row_span(i);
        auto words = seen.words();
        for (std::uint32_t wi = 0; wi < words_per_row_; ++wi) words[wi] |= row[wi];
    }
    std::vector<std::uint32_t> out;
    for (std::uint32_t j = 0; j < n_; ++j)
        if (!seen.get(j)) out.push_back(j);
    return out;
}

TestMatrix TestMatrix::with_claims(std::optional<std::uint32_t> runlength_claim,
                                   std::optional<std::uint32_t> weight_claim) const {
    return TestMatrix(t_, n_, row_words_, runlength_claim, weight_claim);
}

// --- outcomes ---------------------------------------------------------------

Outcome or_outcome(const TestMatrix& m, const SparseSupport& x) {
    if (x.universe() != m.cols()) bad("or_outcome: support universe does not match matrix");
    Outcome y;
    y.kind = Outcome::Kind::boolean;
    y.values.assign(m.rows(), 0);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        for (std::uint32_t j : x.indices()) {
            if (m.at(i, j)) {
                y.values[i] = 1;
                break;
            }
        }
    }
    return y;
}

Outcome count_outcome(const TestMatrix& m, const SparseSupport& x) {
    if (x.universe() != m.cols()) bad("count_outcome: support universe does not match matrix");
    Outcome y;
    y.kind = Outcome::Kind::count;
    y.values.assign(m.rows(), 0);
    for (std::uint32_t i = 0; i < m.rows(); ++i)
        for (std::uint32_t j : x.indices())
            y.values[i] += m.at(i, j);
    return y;
}

// --- constraint checks ------------------------------------------------------

std::optional<RunlengthViolation> check_runlength(const TestMatrix& m, std::uint32_t gap,
                                                  RunMode mode) {
    if (gap == 0) return std::nullopt;
    const std::uint32_t t = m.rows();
    for (std::uint32_t j = 0; j < m.cols(); ++j) {
        std::uint32_t first_one = t;  // t = none seen yet
        std::uint32_t prev_one = t;
        for (std::uint32_t i = 0; i < t; ++i) {
            if (!m.at(i, j)) continue;
            if (prev_one != t && i - prev_one < gap + 1)
                return RunlengthViolation{j, prev_one, i, false};
            if (first_one == t) first_one = i;
            prev_one = i;
        }
        if (mode == RunMode::cyclic && first_one != t && prev_one != first_one) {
            // Wraparound gap between the last and first 1.
            if (t - prev_one + first_one < gap + 1)
                return RunlengthViolation{j, prev_one, first_one, true};
        }
    }
    return std::nullopt;
}

std::optional<WeightViolation> check_weight(const TestMatrix& m, std::uint32_t max_weight) {
    std::vector<std::uint32_t> weights(m.cols(), 0);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        const auto row = m.row_span(i);
        for (std::uint32_t wi = 0; wi < m.words_per_row(); ++wi) {
            std::uint64_t w = row[wi];
            while (w) {
                const int b = std::countr_zero(w);
                ++weights[std::size_t{wi} * 64 + b];
                w &= w - 1;
            }
        }
    }
    for (std::uint32_t j = 0; j < m.cols(); ++j)
        if (weights[j] > max_weight) return WeightViolation{j, weights[j]};
    return std::nullopt;
}

TestMatrix pad_to_divisible(const TestMatrix& m, std::uint32_t gap) {
    const std::uint32_t block = gap + 1;
    const std::uint32_t r = (block - m.rows() % block) % block;
    if (r == 0)
        return m;
    std::vector<std::uint64_t> words(std::size_t{m.rows() + r} * m.words_per_row(), 0);
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        const auto row = m.row_span(i);
        std::copy(row.begin(), row.end(), words.begin() + std::size_t{i} * m.words_per_row());
    }
    return TestMatrix(m.rows() + r, m.cols(), std::move(words), m.runlength_claim(),
                      m.weight_claim());
}

// --- text serialization -----------------------------------------------------

std::string to_text(const TestMatrix& m) {
    std::string out;
    out.reserve(std::size_t{m.rows()} * (m.cols() + 1) + 32);
    const auto claim = [](std::optional<std::uint32_t> c) {
        return c ? std::to_string(*c) : std::string("-1");
    };
    out += std::to_string(m.rows());
    out += ' ';
    out += std::to_string(m.cols());
    out += ' ';
    out += claim(m.runlength_claim());
    out += ' ';
    out += claim(m.weight_claim());
    out += '\n';
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        for (std::uint32_t j = 0; j < m.cols(); ++j) out += m.at(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

namespace {

long long parse_int(std::string_view s) {
    long long v = 0;
    const auto* begin = s.data();
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end) bad("matrix text: malformed integer field");
    return v;
}

}  // namespace

TestMatrix from_text(std::string_view text) {
    const auto header_end = text.find('\n');
    if (header_end == std::string_view::npos) bad("matrix text: missing header line");
    std::string_view header = text.substr(0, header_end);

    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < header.size()) {
        const auto sp = header.find(' ', pos);
        if (sp == std::string_view::npos) {
            fields.push_back(header.substr(pos));
            break;
        }
        fields.push_back(header.substr(pos, sp - pos));
        pos = sp + 1;
    }
    if (fields.size() != 4) bad("matrix text: header must be 't n d w'");
    const long long t = parse_int(fields[0]);
    const long long n = parse_int(fields[1]);
    const long long d = parse_int(fields[2]);
    const long long w = parse_int(fields[3]);
    if (t <= 0 || n <= 0) bad("matrix text: dimensions must be positive");
    if (d < -1 || w < -1) bad("matrix text: claims must be >= -1");

    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(t));
    std::size_t at = header_end + 1;
    for (long long i = 0; i < t; ++i) {
        auto line_end = text.find('\n', at);
        if (line_end == std::string_view::npos) {
            // Tolerate a missing final LF on read; the writer always emits it.
            if (i != t - 1 || text.size() - at != static_cast<std::size_t>(n))
                bad("matrix text: truncated row data");
            line_end = text.size();
        }
        std::string_view line = text.substr(at, line_end - at);
        if (line.size() != static_cast<std::size_t>(n)) bad("matrix text: row has wrong length");
        rows.emplace_back(line);
        at = line_end + 1;
    }
    if (at < text.size()) bad("matrix text: trailing content after matrix rows");

    return TestMatrix::from_rows(
        rows, d >= 0 ? std::optional<std::uint32_t>(static_cast<std::uint32_t>(d)) : std::nullopt,
        w >= 0 ? std::optional<std::uint32_t>(static_cast<std::uint32_t>(w)) : std::nullopt);
}

TestMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open matrix file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return from_text(ss.str());
}

void write_matrix_file(const std::string& path, const TestMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad("cannot open matrix file for writing: " + path);
    out << to_text(m);
    if (!out) bad("failed writing matrix file: " + path);
}

std::string to_text(const Outcome& y) {
    std::string out;
    for (std::size_t i = 0; i < y.values.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(y.values[i]);
    }
    out += '\n';
    return out;
}

Outcome outcome_from_text(std::string_view text, Outcome::Kind kind) {
    Outcome y;
    y.kind = kind;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\n' || text[pos] == '\r' ||
                                     text[pos] == '\t'))
            ++pos;
        if (pos >= text.size()) break;
        std::size_t end = pos;
        while (end < text.size() && text[end] != ' ' && text[end] != '\n' && text[end] != '\r' &&
               text[end] != '\t')
            ++end;
        const long long v = parse_int(text.substr(pos, end - pos));
        if (v < 0) bad("outcome text: negative entry");
        if (kind == Outcome::Kind::boolean && v > 1) bad("outcome text: boolean entry not 0/1");
        y.values.push_back(static_cast<std::uint32_t>(v));
        pos = end;
    }
    if (y.values.empty()) bad("outcome text: no entries");
    return y;
}

Outcome read_outcome_file(const std::string& path, Outcome::Kind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open outcome file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return outcome_from_text(ss.str(), kind);
}

}  // namespace rlgt
