#pragma once

// Exact evaluation of the scheme's closed-form bounds, and numerical
// inversion to the minimal test count meeting a target.
//
// Conventions: entropies and all formula logarithms are base 2; probability
// arithmetic runs in the natural-log domain internally.  Probability bounds
// are reported clamped to [0,1] with the unclamped log value retained.
// Test-count lower bounds are reported as the ceiled value with the
// real-valued expression retained in `raw`.  A bound is always evaluated when the
// arithmetic permits; preconditions its derivation needs are reported as
// named assumption flags, never silently enforced.

#include <cstdint>
#include <string>
#include <vector>

#include "rlgt/common.hpp"

namespace rlgt {

/// The three bound families min_tests can invert and the harness can
/// simulate: worst-case disjunctness, average-case COMP decoding, and
/// quantitative zero-error.
enum class Regime { zero_error, avg_case, qnagt };

inline const char* to_string(Regime r) {
    switch (r) {
        case Regime::zero_error: return "zero-error";
        case Regime::avg_case: return "avg-case";
        default: return "qnagt";
    }
}

/// One precondition of a bound's derivation and whether the queried
/// parameters satisfy it.  Informational notes (like a dropped vanishing
/// term) are recorded with holds = true.
struct Assumption {
    std::string label;
    bool holds = true;
};

enum class BoundKind { lower_bound_tests, upper_bound_probability };

struct BoundValue {
    /// Reported value: probabilities clamped to [0,1]; test-count lower
    /// bounds ceiled (and clamped to [0, n] where the formula says so).
    double value = 0.0;
    /// The formula's unclamped, unrounded value (may be infinite).
    double raw = 0.0;
    /// Natural log of the unclamped probability bound; NaN for test-count
    /// bounds.
    double log_value = 0.0;
    BoundKind kind = BoundKind::upper_bound_probability;
    std::vector<Assumption> assumptions;

    bool assumptions_hold() const {
        for (const auto& a : assumptions)
            if (!a.holds) return false;
        return true;
    }
};

/// Binary entropy, base 2, with 0 log 0 = 0.
double binary_entropy(double p);

/// Collision probability of Bin(l, p): sum over i of P{Bin = i}^2.
/// Computed stably in the log domain.
double collision_prob(std::uint64_t l, double p);

/// Natural log of collision_prob (usable when the probability underflows).
double collision_prob_log(std::uint64_t l, double p);

/// Closed-form upper bound 1/sqrt(2 l p (1-p)) on collision_prob; only
/// meaningful for l p (1-p) large, flagged below 5.
BoundValue collision_prob_ub(std::uint64_t l, double p);

/// Any d-runlength design distinguishing k defectives among n items needs
/// t >= min(n, 1 + k(d+1)).
BoundValue lemma1_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d);

/// Counting lower bound for zero-error d-runlength designs:
/// min(n, ceil(k(d+1) log2(n) / (log2(k(d+1)) - 1))); derivation assumes
/// k(d+1) >= 4.
BoundValue zero_error_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d);

/// Entropy lower bound for average-case d-runlength designs:
/// ceil(k log2(n/k) / h(k/(d+1))); derivation assumes d >= 2k.
BoundValue avg_case_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d);

/// Entropy lower bound for d-runlength quantitative designs:
/// ceil(2(1-delta) k log2(1 + n/k) / log2(2 pi e k/(d+1) + 2)).
/// The derivation wants k >= c_delta log2 n; c_delta defaults to 12/delta^2
/// and the condition is flagged, not enforced.
BoundValue qnagt_entropy_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d, double delta,
                            double c_delta = 0.0);

/// The same bound phrased for w-constrained designs (weight cap w over t
/// tests); equals qnagt_entropy_lb under w = t/(d+1).
BoundValue qnagt_entropy_lb_weight_form(std::uint32_t n, std::uint32_t k, double w, double t,
                                        double delta);

/// Counting lower bound for d-runlength quantitative designs with per-test
/// alphabet [0, k]: ceil(k log2(n/k) / (h(k/(d+1)) + (k/(d+1)) log2 k)).
/// The constant realization is implementation-derived (recorded in the
/// assumptions), and the derivation assumes d >= 2k.
BoundValue qnagt_counting_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d);

/// Union bound on the probability that the runlength-constrained random
/// design fails to be k-disjunct:
/// n (en/k)^k (k alpha / (t - (2d+1)(alpha-1)))^alpha.
/// Requires t > (2d+1)(alpha-1).
BoundValue disjunct_fail_ub(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t,
                            std::uint32_t alpha);

/// Union bound on the probability that COMP misdecodes a uniformly random
/// weight-k defective set under the same design:
/// n (k alpha / (t - (2d+1)(alpha-1)))^alpha.
BoundValue avg_fail_ub(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t,
                       std::uint32_t alpha);

/// Union bound on the probability that the w-constrained quantitative
/// design is not zero-error for exactly-k supports:
/// sum over l of C(k,l) C(n-k,l) collision_prob(l, p)^t at p = w/(2t).
BoundValue qnagt_fail_ub(std::uint32_t n, std::uint32_t k, std::uint32_t w, std::uint32_t t);

/// The same union bound at a fixed per-entry density p (the d-runlength
/// reading uses p = 1/(2(d+1)), i.e. w = t/(d+1)).
BoundValue qnagt_fail_ub_at_density(std::uint32_t n, std::uint32_t k, double p, std::uint32_t t);

/// Union bound on the probability that a Bernoulli(p) base matrix of t_base
/// rows is not k-disjunct: n (en/k)^k (1 - p(1-p)^k)^t_base.  This is the
/// spacer baseline's analytical cost model (its total row count is then
/// (d+1) t_base - d).
BoundValue spacer_fail_ub(std::uint32_t n, std::uint32_t k, double p, std::uint32_t t_base);

struct MinTestsResult {
    std::uint64_t t = 0;
    /// Resolved per-column weight at t (0 for the quantitative regime,
    /// which has no alpha).
    std::uint32_t alpha = 0;
    /// The inverted bound evaluated at t.
    BoundValue bound;
    std::uint64_t evaluations = 0;
};

/// Smallest t whose failure bound meets target_prob, with alpha re-resolved
/// via default_alpha at every candidate t (zero_error inverts
/// disjunct_fail_ub, avg_case inverts avg_fail_ub, qnagt inverts
/// qnagt_fail_ub with d_or_w = w and p = w/(2t)).
///
/// Because the alpha clamp changes value along t, the boolean-regime bounds
/// are only piecewise monotone: the search walks the constant-alpha
/// stretches in order and binary-searches inside each (each stretch is
/// monotone), which finds the exact minimum even where the bound jumps up
/// at a stretch boundary.  The quantitative w-form is scanned linearly
/// (p depends on t, so the bound is not monotone), with a closed-form
/// infeasibility floor checked first.  Throws InfeasibleError when no
/// t <= t_cap meets the target.
MinTestsResult min_tests(Regime regime, std::uint32_t n, std::uint32_t k, std::uint32_t d_or_w,
                         double target_prob, std::uint64_t t_cap = kDefaultTestCap);

/// Smallest t with qnagt_fail_ub_at_density(n, k, 1/(2(d+1)), t) <= target:
/// the quantitative inversion parameterized by runlength like the boolean
/// regimes, making it comparable against the runlength lower bounds.
MinTestsResult min_tests_qnagt_runlength(std::uint32_t n, std::uint32_t k, std::uint32_t d,
                                         double target_prob,
                                         std::uint64_t t_cap = kDefaultTestCap);

struct SpacerMinTests {
    /// Total rows after spacing: (d+1) t_base - d.
    std::uint64_t t_total = 0;
    std::uint64_t t_base = 0;
    BoundValue bound;
};

/// Smallest Bernoulli base size t_base with spacer_fail_ub <= target, and
/// the spaced total row count.  p = 0 selects the default density 1/k.
SpacerMinTests min_tests_spacer(std::uint32_t n, std::uint32_t k, std::uint32_t d,
                                double target_prob, double p = 0.0,
                                std::uint64_t t_cap = kDefaultTestCap);

}  // namespace rlgt
