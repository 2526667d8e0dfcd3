#pragma once

// Decoders: the linear-time COMP rule for boolean outcomes, plus exhaustive
// ground-truth decoders for both channels used as oracles by the tests and
// the simulation harness.

#include <cstdint>

#include "rlgt/common.hpp"
#include "rlgt/matrix.hpp"

namespace rlgt {

struct DecodeResult {
    SparseSupport estimate;
    /// Brute-force decoders set this when two or more candidate supports
    /// produce the observed outcome; estimate is then the first consistent
    /// candidate in (weight, lexicographic) order.
    bool ambiguous = false;
    std::uint64_t candidates_checked = 0;
};

/// COMP: declare item j defective iff every test containing j is positive,
/// i.e. estimate = { j : supp(column j) subseteq supp(y) }.  Never excludes
/// a true defective; on a k-disjunct matrix with y produced by a support of
/// weight <= k it returns exactly that support.  Note that all-zero columns
/// are vacuously included (see verifiers for how they are surfaced).
DecodeResult comp_decode(const TestMatrix& m, const Outcome& y);

/// Exhaustive decoder for the boolean channel: enumerates every support of
/// the given weight mode in (weight, lexicographic) order and collects those
/// with or_outcome == y.  Throws DecodingError if none matches (corrupted
/// input) and InfeasibleError if the enumeration exceeds `cap` candidates.
DecodeResult brute_force_nagt_decode(const TestMatrix& m, const Outcome& y, std::uint32_t k,
                                     WeightMode mode, std::uint64_t cap = kDefaultCheckCap);

/// Exhaustive decoder for the quantitative channel (count_outcome == y).
DecodeResult brute_force_qnagt_decode(const TestMatrix& m, const Outcome& y, std::uint32_t k,
                                      WeightMode mode, std::uint64_t cap = kDefaultCheckCap);

}  // namespace rlgt
