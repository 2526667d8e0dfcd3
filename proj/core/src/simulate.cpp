#include "rlgt/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <utility>

#include "rlgt/decode.hpp"
#include "rlgt/rng.hpp"
#include "rlgt/verify.hpp"

namespace rlgt {

WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson_interval: trials must be >= 1");
    if (failures > trials) throw std::invalid_argument("wilson_interval: failures > trials");
    const double nn = static_cast<double>(trials);
    const double phat = static_cast<double>(failures) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = phat + z2 / (2.0 * nn);
    const double radius = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
    WilsonInterval w;
    w.lo = std::clamp((center - radius) / denom, 0.0, 1.0);
    w.hi = std::clamp((center + radius) / denom, 0.0, 1.0);
    // The exact limits at the extremes are 0 and 1; the formula above only
    // reaches them up to rounding noise, so pin them.
    if (failures == 0) w.lo = 0.0;
    if (failures == trials) w.hi = 1.0;
    return w;
}

namespace {

/// Runs trials 0..trials-1, each deciding pass/fail independently of the
/// others, and returns the failure count.  The chunked partition only
/// distributes work; every trial's result depends solely on its index.
template <typename TrialFn>
std::uint64_t count_failures(std::uint64_t trials, unsigned threads, const TrialFn& trial_fails) {
    if (threads <= 1 || trials < 2) {
        std::uint64_t fails = 0;
        for (std::uint64_t i = 0; i < trials; ++i) fails += trial_fails(i) ? 1 : 0;
        return fails;
    }
    const auto workers = static_cast<unsigned>(
        std::min<std::uint64_t>(threads, trials));
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    std::vector<std::uint64_t> fails(workers, 0);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::uint64_t lo = w * chunk;
            const std::uint64_t hi = std::min(trials, lo + chunk);
            try {
                for (std::uint64_t i = lo; i < hi; ++i) fails[w] += trial_fails(i) ? 1 : 0;
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::uint64_t total = 0;
    for (auto f : fails) total += f;
    return total;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void attach_tally(SimulationReport& r, std::uint64_t trials, std::uint64_t failures,
                  double seconds) {
    r.trials = trials;
    r.failures = failures;
    r.empirical_rate = static_cast<double>(failures) / static_cast<double>(trials);
    r.wilson = wilson_interval(failures, trials);
    r.wall_seconds = seconds;
}

SchemeParams resolved_boolean_params(const SchemeParams& params, const char* what) {
    if (!params.d)
        throw std::invalid_argument(std::string(what) + ": runlength gap d is required");
    SchemeParams p = params;
    if (p.alpha == 0) p.alpha = default_alpha(p.n, p.k, p.t, *p.d);
    p.validate_for_rand_matrix();
    return p;
}

SparseSupport random_support(std::uint32_t n, std::uint32_t k, Rng& rng) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    for (std::uint32_t j = 0; j < k; ++j)
        std::swap(pool[j], pool[j + rng.below(n - j)]);
    pool.resize(k);
    return SparseSupport(n, std::move(pool));
}

}  // namespace

SimulationReport run_zero_error_experiment(const SchemeParams& params, std::uint64_t trials,
                                           const SimOptions& options) {
    if (trials == 0) throw std::invalid_argument("run_zero_error_experiment: trials must be >= 1");
    const SchemeParams p = resolved_boolean_params(params, "run_zero_error_experiment");

    SimulationReport r;
    r.experiment = "zero-error";
    r.n = p.n;
    r.k = p.k;
    r.d = p.d;
    r.t = p.t;
    r.alpha = p.alpha;
    r.seed = p.seed;
    r.analytical_bound = disjunct_fail_ub(p.n, p.k, *p.d, p.t, p.alpha);

    Timer timer;
    const std::uint64_t failures = count_failures(trials, options.threads, [&](std::uint64_t i) {
        SchemeParams q = p;
        q.seed = derive_seed(derive_seed(p.seed, i), 0);
        const TestMatrix m = rand_matrix(q);
        return !is_k_disjunct(m, p.k, options.check_cap).disjunct;
    });
    attach_tally(r, trials, failures, timer.seconds());
    return r;
}

SimulationReport run_avg_case_experiment(const SchemeParams& params, std::uint64_t trials,
                                         const SimOptions& options) {
    if (trials == 0) throw std::invalid_argument("run_avg_case_experiment: trials must be >= 1");
    const SchemeParams p = resolved_boolean_params(params, "run_avg_case_experiment");

    SimulationReport r;
    r.experiment = "avg-case";
    r.n = p.n;
    r.k = p.k;
    r.d = p.d;
    r.t = p.t;
    r.alpha = p.alpha;
    r.seed = p.seed;
    r.analytical_bound = avg_fail_ub(p.n, p.k, *p.d, p.t, p.alpha);

    Timer timer;
    const std::uint64_t failures = count_failures(trials, options.threads, [&](std::uint64_t i) {
        const std::uint64_t trial_seed = derive_seed(p.seed, i);
        SchemeParams q = p;
        q.seed = derive_seed(trial_seed, 0);
        const TestMatrix m = rand_matrix(q);
        Rng support_rng(derive_seed(trial_seed, 1));
        const SparseSupport truth = random_support(p.n, p.k, support_rng);
        const Outcome y = or_outcome(m, truth);
        return !(comp_decode(m, y).estimate == truth);
    });
    attach_tally(r, trials, failures, timer.seconds());
    return r;
}

SimulationReport run_qnagt_experiment(const SchemeParams& params, std::uint64_t trials,
                                      const SimOptions& options) {
    if (trials == 0) throw std::invalid_argument("run_qnagt_experiment: trials must be >= 1");
    if (!params.w)
        throw std::invalid_argument("run_qnagt_experiment: weight cap w is required");
    const std::uint32_t t = qnagt_tests(params.n, params.k, *params.w, params.delta, params.gamma);
    if (params.t != 0 && params.t != t)
        throw std::invalid_argument("run_qnagt_experiment: t is derived; got " +
                                    std::to_string(params.t) + ", derived " + std::to_string(t));

    SimulationReport r;
    r.experiment = "qnagt";
    r.n = params.n;
    r.k = params.k;
    r.w = params.w;
    r.t = t;
    r.alpha = 0;
    r.seed = params.seed;
    r.analytical_bound = qnagt_fail_ub(params.n, params.k, *params.w, t);

    Timer timer;
    const std::uint64_t failures = count_failures(trials, options.threads, [&](std::uint64_t i) {
        const std::uint64_t trial_seed = derive_seed(params.seed, i);
        const QnagtConstruction qc =
            qnagt_construct(params.n, params.k, *params.w, params.delta, params.gamma,
                            derive_seed(trial_seed, 0));
        Rng support_rng(derive_seed(trial_seed, 1));
        const SparseSupport truth = random_support(params.n, params.k, support_rng);
        const Outcome y = count_outcome(qc.matrix, truth);
        // `truth` always matches its own outcome, so ambiguity is exactly the
        // event that a second weight-k support shares the counts.
        return brute_force_qnagt_decode(qc.matrix, y, params.k, WeightMode::exactly_k,
                                        options.check_cap)
            .ambiguous;
    });
    attach_tally(r, trials, failures, timer.seconds());
    return r;
}

std::vector<SimulationReport> sweep(Regime regime, const SweepGrid& grid,
                                    const SimOptions& options) {
    if (grid.n_values.empty() || grid.k_values.empty() || grid.dw_values.empty())
        throw std::invalid_argument("sweep: grid axes must be non-empty");
    if (grid.trials == 0) throw std::invalid_argument("sweep: trials must be >= 1");
    if (regime != Regime::qnagt && !(grid.target > 0.0 && grid.target < 1.0))
        throw std::invalid_argument("sweep: target must be in (0,1)");

    std::vector<SimulationReport> out;
    std::uint64_t cell = 0;
    for (std::uint32_t n : grid.n_values) {
        for (std::uint32_t k : grid.k_values) {
            for (std::uint32_t dw : grid.dw_values) {
                const std::uint64_t cell_seed = derive_seed(grid.seed, cell);
                ++cell;

                SimulationReport skipped;
                skipped.experiment = to_string(regime);
                skipped.n = n;
                skipped.k = k;
                if (regime == Regime::qnagt)
                    skipped.w = dw;
                else
                    skipped.d = dw;
                skipped.seed = cell_seed;

                const bool dimension_ok =
                    regime == Regime::qnagt ? (k >= 1 && k <= n) : (k >= 1 && k < n);
                if (!dimension_ok) {
                    out.push_back(std::move(skipped));
                    continue;
                }
                try {
                    SchemeParams p;
                    p.n = n;
                    p.k = k;
                    p.seed = cell_seed;
                    p.delta = grid.delta;
                    p.gamma = grid.gamma;
                    if (regime == Regime::qnagt) {
                        p.w = dw;
                        out.push_back(run_qnagt_experiment(p, grid.trials, options));
                    } else {
                        const MinTestsResult mt = min_tests(regime, n, k, dw, grid.target);
                        p.d = dw;
                        p.t = static_cast<std::uint32_t>(mt.t);
                        p.alpha = mt.alpha;
                        out.push_back(regime == Regime::zero_error
                                          ? run_zero_error_experiment(p, grid.trials, options)
                                          : run_avg_case_experiment(p, grid.trials, options));
                    }
                } catch (const InfeasibleError&) {
                    out.push_back(std::move(skipped));
                }
            }
        }
    }
    return out;
}

namespace {

std::string fmt_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt_dim(const std::optional<std::uint32_t>& v) {
    return v ? std::to_string(*v) : "-1";
}

}  // namespace

std::string csv_header() {
    return "experiment,n,k,d,w,t,alpha,trials,failures,rate,wilson_lo,wilson_hi,bound,seed";
}

std::string csv_row(const SimulationReport& r) {
    std::string s;
    s += r.experiment;
    s += ',';
    s += std::to_string(r.n);
    s += ',';
    s += std::to_string(r.k);
    s += ',';
    s += fmt_dim(r.d);
    s += ',';
    s += fmt_dim(r.w);
    s += ',';
    s += std::to_string(r.t);
    s += ',';
    s += r.alpha == 0 ? std::string("-1") : std::to_string(r.alpha);
    s += ',';
    s += std::to_string(r.trials);
    s += ',';
    s += std::to_string(r.failures);
    s += ',';
    s += fmt_double(r.empirical_rate);
    s += ',';
    s += fmt_double(r.wilson.lo);
    s += ',';
    s += fmt_double(r.wilson.hi);
    s += ',';
    s += fmt_double(r.analytical_bound.value);
    s += ',';
    s += std::to_string(r.seed);
    return s;
}

}  // namespace rlgt
