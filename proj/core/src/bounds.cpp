#include "rlgt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlgt/construct.hpp"

namespace rlgt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

double ln_choose(std::uint64_t n, std::uint64_t r) {
    if (r > n) return -kInf;
    return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(r) + 1) -
           std::lgamma(static_cast<double>(n - r) + 1);
}

double logsumexp(const std::vector<double>& ln_terms) {
    double mx = -kInf;
    for (double v : ln_terms) mx = std::max(mx, v);
    if (!std::isfinite(mx)) return mx;
    double s = 0.0;
    for (double v : ln_terms) s += std::exp(v - mx);
    return mx + std::log(s);
}

/// Probability-kind BoundValue from a natural-log bound value.
BoundValue prob_bound(double ln_value, std::vector<Assumption> assumptions = {}) {
    BoundValue b;
    b.kind = BoundKind::upper_bound_probability;
    b.log_value = ln_value;
    b.raw = std::exp(ln_value);
    b.value = ln_value > 0.0 ? 1.0 : std::exp(ln_value);
    b.assumptions = std::move(assumptions);
    return b;
}

/// Test-count-kind BoundValue; value is the ceiled (and possibly clamped)
/// report, raw the formula's real value.
BoundValue t_bound(double value, double raw, std::vector<Assumption> assumptions = {}) {
    BoundValue b;
    b.kind = BoundKind::lower_bound_tests;
    b.value = value;
    b.raw = raw;
    b.log_value = kNaN;
    b.assumptions = std::move(assumptions);
    return b;
}

}  // namespace

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) bad("binary_entropy: p must be in [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double collision_prob_log(std::uint64_t l, double p) {
    if (!(p >= 0.0 && p <= 1.0)) bad("collision_prob: p must be in [0,1]");
    if (l == 0 || p == 0.0 || p == 1.0) return 0.0;  // point mass collides surely
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(l) + 1);
    for (std::uint64_t i = 0; i <= l; ++i) {
        const double ln_pmf = ln_choose(l, i) + static_cast<double>(i) * lp +
                              static_cast<double>(l - i) * lq;
        terms.push_back(2.0 * ln_pmf);
    }
    return logsumexp(terms);
}

double collision_prob(std::uint64_t l, double p) {
    return std::exp(collision_prob_log(l, p));
}

BoundValue collision_prob_ub(std::uint64_t l, double p) {
    if (l == 0 || !(p > 0.0 && p < 1.0))
        bad("collision_prob_ub: need l >= 1 and p in (0,1)");
    const double variance_scale = static_cast<double>(l) * p * (1.0 - p);
    const double raw = 1.0 / std::sqrt(2.0 * variance_scale);
    BoundValue b = prob_bound(std::log(raw));
    b.assumptions.push_back({"l*p*(1-p) >= 5 (normal-approximation regime)",
                             variance_scale >= 5.0});
    return b;
}

BoundValue lemma1_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d) {
    if (k < 1) bad("lemma1_lb: k must be >= 1");
    const double raw = std::min<double>(n, 1.0 + static_cast<double>(k) * (d + 1.0));
    return t_bound(raw, raw);
}

BoundValue zero_error_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d) {
    if (k < 1 || n < 1) bad("zero_error_lb: need n, k >= 1");
    const double kd1 = static_cast<double>(k) * (d + 1.0);
    const double den = std::log2(kd1) - 1.0;
    std::vector<Assumption> assumptions{{"k(d+1) >= 4", kd1 >= 4.0}};
    double raw;
    if (den > 0.0)
        raw = kd1 * std::log2(static_cast<double>(n)) / den;
    else if (den == 0.0)
        raw = kInf;
    else
        raw = -kInf;  // denominator negative: the rearrangement is meaningless
    const double value = std::min<double>(n, std::max(0.0, std::ceil(raw)));
    return t_bound(value, raw, std::move(assumptions));
}

BoundValue avg_case_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d) {
    if (k < 1 || k >= n) bad("avg_case_lb: need 1 <= k < n");
    std::vector<Assumption> assumptions{
        {"d >= 2k", d >= 2ull * k},
        {"vanishing slack of the entropy argument dropped", true}};
    const double ratio = static_cast<double>(k) / (d + 1.0);
    if (ratio > 1.0) return t_bound(0.0, kNaN, std::move(assumptions));
    const double h = binary_entropy(ratio);
    const double num = static_cast<double>(k) * std::log2(static_cast<double>(n) / k);
    const double raw = h > 0.0 ? num / h : kInf;
    const double value = std::isfinite(raw) ? std::ceil(raw) : raw;
    return t_bound(value, raw, std::move(assumptions));
}

namespace {

std::vector<Assumption> qnagt_entropy_assumptions(std::uint32_t n, std::uint32_t k, double delta,
                                                  double c_delta) {
    if (c_delta <= 0.0) c_delta = 12.0 / (delta * delta);
    const double needed = c_delta * std::log2(static_cast<double>(n));
    return {{"k >= " + std::to_string(c_delta) + " * log2(n) = " + std::to_string(needed),
             static_cast<double>(k) >= needed}};
}

double qnagt_entropy_raw(std::uint32_t n, std::uint32_t k, double alphabet_arg, double delta) {
    const double num = 2.0 * (1.0 - delta) * k * std::log2(1.0 + static_cast<double>(n) / k);
    const double den =
        std::log2(2.0 * std::numbers::pi * std::numbers::e * alphabet_arg + 2.0);
    return num / den;
}

}  // namespace

BoundValue qnagt_entropy_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d, double delta,
                            double c_delta) {
    if (k < 1 || n < 1) bad("qnagt_entropy_lb: need n, k >= 1");
    if (!(delta > 0.0 && delta < 1.0)) bad("qnagt_entropy_lb: need 0 < delta < 1");
    const double raw = qnagt_entropy_raw(n, k, static_cast<double>(k) / (d + 1.0), delta);
    return t_bound(std::ceil(raw), raw, qnagt_entropy_assumptions(n, k, delta, c_delta));
}

BoundValue qnagt_entropy_lb_weight_form(std::uint32_t n, std::uint32_t k, double w, double t,
                                        double delta) {
    if (k < 1 || n < 1) bad("qnagt_entropy_lb_weight_form: need n, k >= 1");
    if (!(delta > 0.0 && delta < 1.0)) bad("qnagt_entropy_lb_weight_form: need 0 < delta < 1");
    if (!(w > 0.0 && t > 0.0)) bad("qnagt_entropy_lb_weight_form: need w, t > 0");
    const double raw = qnagt_entropy_raw(n, k, static_cast<double>(k) * w / t, delta);
    return t_bound(std::ceil(raw), raw, qnagt_entropy_assumptions(n, k, delta, 0.0));
}

BoundValue qnagt_counting_lb(std::uint32_t n, std::uint32_t k, std::uint32_t d) {
    if (k < 1 || k >= n) bad("qnagt_counting_lb: need 1 <= k < n");
    std::vector<Assumption> assumptions{
        {"d >= 2k", d >= 2ull * k},
        {"constant realization is implementation-derived, not a stated formula", true}};
    const double ratio = static_cast<double>(k) / (d + 1.0);
    if (ratio > 1.0) return t_bound(0.0, kNaN, std::move(assumptions));
    const double den = binary_entropy(ratio) + ratio * std::log2(static_cast<double>(k));
    const double num = static_cast<double>(k) * std::log2(static_cast<double>(n) / k);
    const double raw = den > 0.0 ? num / den : kInf;
    const double value = std::isfinite(raw) ? std::ceil(raw) : raw;
    return t_bound(value, raw, std::move(assumptions));
}

namespace {

/// ln of (k alpha / (t - (2d+1)(alpha-1)))^alpha, the core factor of both
/// boolean-channel failure bounds.  Requires t > (2d+1)(alpha-1).
double ln_core_factor(std::uint32_t k, std::uint32_t d, std::uint64_t t, std::uint32_t alpha) {
    const double denom =
        static_cast<double>(t) - (2.0 * d + 1.0) * (static_cast<double>(alpha) - 1.0);
    if (!(denom > 0.0)) bad("failure bound: need t > (2d+1)(alpha-1)");
    return static_cast<double>(alpha) *
           std::log(static_cast<double>(k) * alpha / denom);
}

double ln_counting_envelope(std::uint32_t n, std::uint32_t k) {
    // ln of n * (en/k)^k, the union-bound count of (column, k-subset) pairs.
    return std::log(static_cast<double>(n)) +
           static_cast<double>(k) *
               (1.0 + std::log(static_cast<double>(n) / k));
}

}  // namespace

BoundValue disjunct_fail_ub(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t,
                            std::uint32_t alpha) {
    if (k < 1 || k > n) bad("disjunct_fail_ub: need 1 <= k <= n");
    if (alpha < 1) bad("disjunct_fail_ub: need alpha >= 1");
    return prob_bound(ln_counting_envelope(n, k) + ln_core_factor(k, d, t, alpha));
}

BoundValue avg_fail_ub(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t,
                       std::uint32_t alpha) {
    if (k < 1 || k > n) bad("avg_fail_ub: need 1 <= k <= n");
    if (alpha < 1) bad("avg_fail_ub: need alpha >= 1");
    return prob_bound(std::log(static_cast<double>(n)) + ln_core_factor(k, d, t, alpha));
}

BoundValue qnagt_fail_ub_at_density(std::uint32_t n, std::uint32_t k, double p, std::uint32_t t) {
    if (k < 1 || k > n) bad("qnagt_fail_ub: need 1 <= k <= n");
    if (t < 1) bad("qnagt_fail_ub: need t >= 1");
    if (!(p >= 0.0 && p <= 1.0)) bad("qnagt_fail_ub: density must be in [0,1]");
    std::vector<double> terms;
    const std::uint32_t lmax = std::min(k, n - k);
    for (std::uint32_t l = 1; l <= lmax; ++l)
        terms.push_back(ln_choose(k, l) + ln_choose(n - k, l) +
                        static_cast<double>(t) * collision_prob_log(l, p));
    const double ln = terms.empty() ? -kInf : logsumexp(terms);
    return prob_bound(ln, {{"density p <= 1/2", p <= 0.5}});
}

BoundValue qnagt_fail_ub(std::uint32_t n, std::uint32_t k, std::uint32_t w, std::uint32_t t) {
    if (w < 1) bad("qnagt_fail_ub: need w >= 1");
    if (t < 1) bad("qnagt_fail_ub: need t >= 1");
    const double p = static_cast<double>(w) / (2.0 * t);
    if (p > 1.0) bad("qnagt_fail_ub: w/(2t) exceeds 1, not a density");
    BoundValue b = qnagt_fail_ub_at_density(n, k, p, t);
    b.assumptions = {{"p = w/(2t) <= 1/2", p <= 0.5}};
    return b;
}

BoundValue spacer_fail_ub(std::uint32_t n, std::uint32_t k, double p, std::uint32_t t_base) {
    if (k < 1 || k > n) bad("spacer_fail_ub: need 1 <= k <= n");
    if (!(p >= 0.0 && p <= 1.0)) bad("spacer_fail_ub: p must be in [0,1]");
    if (t_base < 1) bad("spacer_fail_ub: need t_base >= 1");
    // Per-row witness probability: the checked column at 1 and the k
    // covering columns all at 0.
    const double q = p * std::pow(1.0 - p, static_cast<double>(k));
    const double ln =
        ln_counting_envelope(n, k) + static_cast<double>(t_base) * std::log1p(-q);
    return prob_bound(ln);
}

// --- inversion --------------------------------------------------------------

namespace {

[[noreturn]] void infeasible_target(double target, std::uint64_t t_cap) {
    throw InfeasibleError("min_tests: no t <= " + std::to_string(t_cap) +
                          " brings the bound to " + std::to_string(target));
}

/// Shared inversion for the two boolean-channel bounds, which differ only
/// in the counting envelope.  alpha = min(ideal, floor(t/(2d+1))) is
/// constant on stretches of t; within a stretch the bound strictly
/// decreases in t, so walking the stretches in order and binary-searching
/// inside the first one whose right endpoint passes yields the exact
/// smallest passing t even though the bound can jump upward across stretch
/// boundaries.
MinTestsResult invert_boolean_bound(std::uint32_t n, std::uint32_t k, std::uint32_t d,
                                    double target, std::uint64_t t_cap, bool zero_error) {
    if (!(target > 0.0 && target < 1.0)) bad("min_tests: target must be in (0,1)");
    if (k < 1 || k >= n) bad("min_tests: need 1 <= k < n");
    if (t_cap < 1) bad("min_tests: cap must be >= 1");
    t_cap = std::min<std::uint64_t>(t_cap, 0xFFFFFFFFull);

    const double ln_target = std::log(target);
    const std::uint64_t window = 2ull * d + 1;
    const double ideal_raw =
        std::ceil(static_cast<double>(k) * std::log2(static_cast<double>(n) / k));
    const auto ideal = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(ideal_raw));

    MinTestsResult result;
    const auto ln_bound_at = [&](std::uint64_t t, std::uint64_t alpha) {
        ++result.evaluations;
        const double core = ln_core_factor(k, d, t, static_cast<std::uint32_t>(alpha));
        return (zero_error ? ln_counting_envelope(n, k) : std::log(static_cast<double>(n))) +
               core;
    };
    const auto finish = [&](std::uint64_t t, std::uint64_t alpha) {
        result.t = t;
        result.alpha = static_cast<std::uint32_t>(alpha);
        result.bound = zero_error
                           ? disjunct_fail_ub(n, k, d, static_cast<std::uint32_t>(t),
                                              result.alpha)
                           : avg_fail_ub(n, k, d, static_cast<std::uint32_t>(t), result.alpha);
        return result;
    };

    for (std::uint64_t alpha = 1; alpha <= ideal; ++alpha) {
        std::uint64_t lo = alpha * window;
        if (lo > t_cap) break;
        if (alpha < ideal) {
            std::uint64_t hi = std::min((alpha + 1) * window - 1, t_cap);
            if (lo > hi) continue;
            if (ln_bound_at(hi, alpha) > ln_target) continue;
            while (lo < hi) {
                const std::uint64_t mid = lo + (hi - lo) / 2;
                if (ln_bound_at(mid, alpha) <= ln_target)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            return finish(lo, alpha);
        }
        // Final stretch: alpha stays at ideal for all t >= lo.
        if (ln_bound_at(lo, alpha) <= ln_target) return finish(lo, alpha);
        std::uint64_t hi = lo;
        for (;;) {
            if (hi >= t_cap) infeasible_target(target, t_cap);
            hi = std::min(hi * 2, t_cap);
            if (ln_bound_at(hi, alpha) <= ln_target) break;
            if (hi == t_cap) infeasible_target(target, t_cap);
        }
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (ln_bound_at(mid, alpha) <= ln_target)
                hi = mid;
            else
                lo = mid + 1;
        }
        return finish(lo, alpha);
    }
    infeasible_target(target, t_cap);
}

MinTestsResult invert_qnagt_weight_form(std::uint32_t n, std::uint32_t k, std::uint32_t w,
                                        double target, std::uint64_t t_cap) {
    if (!(target > 0.0 && target < 1.0)) bad("min_tests: target must be in (0,1)");
    if (k < 1 || k > n) bad("min_tests: need 1 <= k <= n");
    if (w < 1) bad("min_tests: need w >= 1");
    t_cap = std::min<std::uint64_t>(t_cap, 0xFFFFFFFFull);

    const double ln_target = std::log(target);

    // For t >= w the bound never drops below sum_l C(k,l) C(n-k,l) e^(-2lw):
    // collision_prob(l, p) >= (1-p)^(2l) >= e^(-lw/(t(1-p))) per test, and
    // p <= 1/2 there.  If even that floor misses the target, only the
    // high-density window t in [w/2, w] could work.
    std::vector<double> floor_terms;
    for (std::uint32_t l = 1; l <= std::min(k, n - k); ++l)
        floor_terms.push_back(ln_choose(k, l) + ln_choose(n - k, l) -
                              2.0 * static_cast<double>(l) * w);
    const double ln_floor = floor_terms.empty() ? -kInf : logsumexp(floor_terms);

    MinTestsResult result;
    const std::uint64_t t0 = std::max<std::uint64_t>(1, (w + 1) / 2);
    for (std::uint64_t t = t0; t <= t_cap; ++t) {
        if (t > w && ln_floor > ln_target) infeasible_target(target, t_cap);
        ++result.evaluations;
        BoundValue b = qnagt_fail_ub(n, k, w, static_cast<std::uint32_t>(t));
        if (b.log_value <= ln_target) {
            result.t = t;
            result.alpha = 0;
            result.bound = std::move(b);
            return result;
        }
    }
    infeasible_target(target, t_cap);
}

}  // namespace

MinTestsResult min_tests(Regime regime, std::uint32_t n, std::uint32_t k, std::uint32_t d_or_w,
                         double target_prob, std::uint64_t t_cap) {
    switch (regime) {
        case Regime::zero_error:
            return invert_boolean_bound(n, k, d_or_w, target_prob, t_cap, true);
        case Regime::avg_case:
            return invert_boolean_bound(n, k, d_or_w, target_prob, t_cap, false);
        default:
            return invert_qnagt_weight_form(n, k, d_or_w, target_prob, t_cap);
    }
}

MinTestsResult min_tests_qnagt_runlength(std::uint32_t n, std::uint32_t k, std::uint32_t d,
                                         double target_prob, std::uint64_t t_cap) {
    if (!(target_prob > 0.0 && target_prob < 1.0)) bad("min_tests: target must be in (0,1)");
    if (k < 1 || k > n) bad("min_tests: need 1 <= k <= n");
    t_cap = std::min<std::uint64_t>(t_cap, 0xFFFFFFFFull);

    const double p = 1.0 / (2.0 * (d + 1.0));
    const double ln_target = std::log(target_prob);
    MinTestsResult result;
    const auto passes = [&](std::uint64_t t) {
        ++result.evaluations;
        return qnagt_fail_ub_at_density(n, k, p, static_cast<std::uint32_t>(t)).log_value <=
               ln_target;
    };

    // Fixed density: the bound strictly decreases in t.
    std::uint64_t lo = 1, hi = 1;
    if (!passes(1)) {
        for (;;) {
            if (hi >= t_cap) infeasible_target(target_prob, t_cap);
            hi = std::min(hi * 2, t_cap);
            if (passes(hi)) break;
            if (hi == t_cap) infeasible_target(target_prob, t_cap);
        }
        lo = hi / 2 + 1;
        while (lo < hi) {
            const std::uint64_t mid = lo + (hi - lo) / 2;
            if (passes(mid))
                hi = mid;
            else
                lo = mid + 1;
        }
    }
    result.t = lo;
    result.alpha = 0;
    result.bound = qnagt_fail_ub_at_density(n, k, p, static_cast<std::uint32_t>(lo));
    return result;
}

SpacerMinTests min_tests_spacer(std::uint32_t n, std::uint32_t k, std::uint32_t d,
                                double target_prob, double p, std::uint64_t t_cap) {
    if (!(target_prob > 0.0 && target_prob < 1.0)) bad("min_tests_spacer: target must be in (0,1)");
    if (k < 1 || k > n) bad("min_tests_spacer: need 1 <= k <= n");
    if (p == 0.0) p = 1.0 / k;
    if (!(p > 0.0 && p < 1.0)) bad("min_tests_spacer: p must be in (0,1)");
    t_cap = std::min<std::uint64_t>(t_cap, 0xFFFFFFFFull);

    const double q = p * std::pow(1.0 - p, static_cast<double>(k));
    if (!(q > 0.0)) throw InfeasibleError("min_tests_spacer: witness probability underflows");
    const double ln_target = std::log(target_prob);
    const double ln_envelope = ln_counting_envelope(n, k);
    const double per_row = std::log1p(-q);  // negative

    const auto ln_at = [&](std::uint64_t tb) {
        return ln_envelope + static_cast<double>(tb) * per_row;
    };
    auto tb = static_cast<std::uint64_t>(
        std::max(1.0, std::ceil((ln_target - ln_envelope) / per_row)));
    while (tb > 1 && ln_at(tb - 1) <= ln_target) --tb;
    while (ln_at(tb) > ln_target) {
        if (tb >= t_cap) infeasible_target(target_prob, t_cap);
        ++tb;
    }

    SpacerMinTests out;
    out.t_base = tb;
    out.t_total = (std::uint64_t{d} + 1) * tb - d;
    out.bound = spacer_fail_ub(n, k, p, static_cast<std::uint32_t>(tb));
    return out;
}

}  // namespace rlgt
