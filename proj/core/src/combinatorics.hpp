#pragma once

// Internal helpers for subset enumeration shared by the exhaustive decoders
// and verifiers.  Not installed.

#include <cstdint>
#include <vector>

namespace rlgt::detail {

/// C(n, r) clamped to cap+1 so callers can test feasibility without
/// overflow.
inline std::uint64_t choose_clamped(std::uint64_t n, std::uint64_t r, std::uint64_t cap) {
    if (r > n) return 0;
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < r; ++i) {
        if (result > cap) return cap + 1;
        const std::uint64_t num = n - i;
        if (num != 0 && result > (std::uint64_t{1} << 62) / num) return cap + 1;
        result = result * num / (i + 1);
    }
    return result > cap ? cap + 1 : result;
}

/// Saturating add against cap+1.
inline std::uint64_t add_clamped(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    const std::uint64_t s = a + b;
    return (s < a || s > cap) ? cap + 1 : s;
}

/// Saturating multiply against cap+1.
inline std::uint64_t mul_clamped(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
    if (a == 0 || b == 0) return 0;
    if (a > cap / b) return cap + 1;
    const std::uint64_t p = a * b;
    return p > cap ? cap + 1 : p;
}

/// Sets idx to the first r-combination (0, 1, ..., r-1).
inline void first_combination(std::vector<std::uint32_t>& idx, std::uint32_t r) {
    idx.resize(r);
    for (std::uint32_t i = 0; i < r; ++i) idx[i] = i;
}

/// Advances idx to the next r-combination of [0, n) in lexicographic order;
/// returns false after the last.
inline bool next_combination(std::vector<std::uint32_t>& idx, std::uint32_t n) {
    const auto r = static_cast<std::uint32_t>(idx.size());
    for (std::uint32_t i = r; i-- > 0;) {
        if (idx[i] + (r - i) < n) {
            ++idx[i];
            for (std::uint32_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace rlgt::detail
