#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rlgt {

/// Raised when a request is structurally valid but too large to run
/// exhaustively (enumeration or search caps exceeded).  CLI maps this to
/// exit status 3.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an input that should be internally consistent is not
/// (e.g. an outcome vector no candidate support can produce).
class DecodingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Interpretation of "k-sparse" in enumeration-based checks: zero-error
/// definitions quantify over weights up to k, average-case experiments draw
/// weight exactly k.  Callers always state which one they mean.
enum class WeightMode { exactly_k, at_most_k };

inline const char* to_string(WeightMode m) {
    return m == WeightMode::exactly_k ? "exactly-k" : "at-most-k";
}

/// Default ceiling on elementary checks (support containments, outcome
/// comparisons) a single exhaustive verification call may perform.
inline constexpr std::uint64_t kDefaultCheckCap = 100'000'000;

/// Default ceiling on the number of tests considered by bound inversion.
inline constexpr std::uint64_t kDefaultTestCap = 100'000'000;

}  // namespace rlgt
