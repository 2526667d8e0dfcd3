#include "rlgt/decode.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "combinatorics.hpp"
#include "rlgt/bitvec.hpp"

namespace rlgt {

namespace {

using detail::add_clamped;
using detail::choose_clamped;
using detail::first_combination;
using detail::next_combination;

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

template <typename Consistent>
DecodeResult brute_force_decode(const TestMatrix& m, std::uint32_t k, WeightMode mode,
                                std::uint64_t cap, Consistent&& consistent) {
    if (k > m.cols()) bad("brute-force decode: k exceeds item count");

    std::uint64_t total = 0;
    const std::uint32_t lo = (mode == WeightMode::exactly_k) ? k : 0;
    for (std::uint32_t weight = lo; weight <= k; ++weight) {
        total = add_clamped(total, choose_clamped(m.cols(), weight, cap), cap);
        if (total > cap)
            throw InfeasibleError(
                "brute-force decode: candidate count exceeds cap; not desk-scale");
    }

    DecodeResult result{SparseSupport::empty(m.cols())};
    bool found = false;
    std::vector<std::uint32_t> idx;
    for (std::uint32_t weight = lo; weight <= k && !(found && result.ambiguous); ++weight) {
        if (weight > m.cols()) break;
        first_combination(idx, weight);
        do {
            ++result.candidates_checked;
            if (consistent(idx)) {
                if (!found) {
                    found = true;
                    result.estimate = SparseSupport(m.cols(), idx);
                } else {
                    result.ambiguous = true;
                    break;
                }
            }
        } while (next_combination(idx, m.cols()));
    }
    if (!found)
        throw DecodingError(
            "brute-force decode: no candidate support produces this outcome (corrupted input?)");
    return result;
}

}  // namespace

DecodeResult comp_decode(const TestMatrix& m, const Outcome& y) {
    if (y.kind != Outcome::Kind::boolean) bad("comp_decode: outcome must be boolean");
    if (y.length() != m.rows()) bad("comp_decode: outcome length does not match matrix");
    for (std::uint32_t v : y.values)
        if (v > 1) bad("comp_decode: boolean outcome has an entry > 1");

    // A column survives iff it has no 1 in any negative test, so OR all
    // negative rows together and keep the columns still at 0.
    BitVec excluded(m.cols());
    auto ex = excluded.words();
    for (std::uint32_t i = 0; i < m.rows(); ++i) {
        if (y.values[i] != 0) continue;
        const auto row = m.row_span(i);
        for (std::uint32_t wi = 0; wi < m.words_per_row(); ++wi) ex[wi] |= row[wi];
    }

    std::vector<std::uint32_t> estimate;
    for (std::uint32_t j = 0; j < m.cols(); ++j)
        if (!excluded.get(j)) estimate.push_back(j);

    DecodeResult result{SparseSupport(m.cols(), std::move(estimate))};
    result.candidates_checked = m.cols();
    return result;
}

DecodeResult brute_force_nagt_decode(const TestMatrix& m, const Outcome& y, std::uint32_t k,
                                     WeightMode mode, std::uint64_t cap) {
    if (y.kind != Outcome::Kind::boolean) bad("brute_force_nagt_decode: outcome must be boolean");
    if (y.length() != m.rows()) bad("brute_force_nagt_decode: outcome length mismatch");
    for (std::uint32_t v : y.values)
        if (v > 1) bad("brute_force_nagt_decode: boolean outcome has an entry > 1");

    const BitVec want = y.positive_rows();
    const std::vector<BitVec> cols = m.columns();
    BitVec acc(m.rows());
    return brute_force_decode(m, k, mode, cap, [&](const std::vector<std::uint32_t>& idx) {
        auto words = acc.words();
        std::fill(words.begin(), words.end(), 0);
        for (std::uint32_t j : idx) acc |= cols[j];
        return acc == want;
    });
}

DecodeResult brute_force_qnagt_decode(const TestMatrix& m, const Outcome& y, std::uint32_t k,
                                      WeightMode mode, std::uint64_t cap) {
    if (y.kind != Outcome::Kind::count) bad("brute_force_qnagt_decode: outcome must be counts");
    if (y.length() != m.rows()) bad("brute_force_qnagt_decode: outcome length mismatch");

    std::vector<std::vector<std::uint32_t>> supports(m.cols());
    for (std::uint32_t j = 0; j < m.cols(); ++j) supports[j] = m.column(j).set_bits();

    std::vector<std::uint32_t> counts(m.rows());
    return brute_force_decode(m, k, mode, cap, [&](const std::vector<std::uint32_t>& idx) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::uint32_t j : idx)
            for (std::uint32_t row : supports[j]) ++counts[row];
        return counts == y.values;
    });
}

}  // namespace rlgt
