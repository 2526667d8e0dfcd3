#pragma once

// Monte-Carlo harness: seeded, reproducible experiments measuring how often
// the random constructions fail, with Wilson confidence intervals and the
// matching analytical bound attached to every result.
//
// Determinism contract: trial i of a run with master seed s uses only
// derive_seed(s, i) substreams, so failure counts are identical for any
// thread count and any trial execution order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rlgt/bounds.hpp"
#include "rlgt/common.hpp"
#include "rlgt/construct.hpp"

namespace rlgt {

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Wilson score interval for a binomial proportion; default z is the
/// two-sided 95% normal quantile.
WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials,
                               double z = 1.959963984540054);

struct SimOptions {
    unsigned threads = 1;
    /// Work cap forwarded to the exhaustive verifiers run inside each trial.
    std::uint64_t check_cap = kDefaultCheckCap;
};

/// One experiment's outcome.  Unset dimension fields (d for the quantitative
/// channel, w for the boolean one) stay nullopt and serialize as -1.
struct SimulationReport {
    std::string experiment;  // "zero-error", "avg-case", or "qnagt"
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::optional<std::uint32_t> d;
    std::optional<std::uint32_t> w;
    std::uint32_t t = 0;
    std::uint32_t alpha = 0;  // 0 when the construction has no such knob
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double empirical_rate = 0.0;
    WilsonInterval wilson;
    BoundValue analytical_bound;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

/// Per trial: draw the runlength design and test it for k-disjunctness
/// exhaustively.  Failure = not k-disjunct.  Bound: disjunct_fail_ub.
/// Requires params.d; alpha = 0 means use default_alpha.
SimulationReport run_zero_error_experiment(const SchemeParams& params, std::uint64_t trials,
                                           const SimOptions& options = {});

/// Per trial: draw the runlength design and a uniform exactly-k support,
/// then COMP-decode the boolean outcome.  Failure = estimate != truth.
/// Bound: avg_fail_ub.
SimulationReport run_avg_case_experiment(const SchemeParams& params, std::uint64_t trials,
                                         const SimOptions& options = {});

/// Per trial: draw the weight-constrained quantitative design and a uniform
/// exactly-k support, then decode its count outcome exhaustively.  Failure =
/// some other weight-k support shares the outcome (the decoder reports an
/// ambiguity) — the same per-support event qnagt_fail_ub upper-bounds; the
/// exhaustive all-pairs property is strictly stronger and is exercised by
/// qnagt_zero_error_check instead.  Bound: qnagt_fail_ub.  Requires
/// params.w; t is derived via qnagt_tests and params.t must be 0 or agree.
SimulationReport run_qnagt_experiment(const SchemeParams& params, std::uint64_t trials,
                                      const SimOptions& options = {});

/// Cartesian sweep grid.  dw_values holds d for the boolean regimes and w
/// for the quantitative one.  For the boolean regimes t is chosen per cell
/// by inverting the failure bound to `target`; for the quantitative regime
/// t comes from qnagt_tests and `target` is unused.
struct SweepGrid {
    std::vector<std::uint32_t> n_values;
    std::vector<std::uint32_t> k_values;
    std::vector<std::uint32_t> dw_values;
    double target = 0.01;
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    double delta = 0.25;
    double gamma = 0.5;
};

/// Runs one experiment per grid cell (cell seed = derive_seed(grid.seed,
/// cell index in n-major, then k, then d/w order)).  Cells whose bound
/// cannot reach the target within the test cap are reported with t = 0 and
/// trials = 0 rather than aborting the sweep.
std::vector<SimulationReport> sweep(Regime regime, const SweepGrid& grid,
                                    const SimOptions& options = {});

/// CSV serialization.  Header:
/// experiment,n,k,d,w,t,alpha,trials,failures,rate,wilson_lo,wilson_hi,bound,seed
/// Unset d/w serialize as -1, alpha 0 as -1; doubles use shortest
/// round-trip formatting.
std::string csv_header();
std::string csv_row(const SimulationReport& report);

}  // namespace rlgt
