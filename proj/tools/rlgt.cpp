// rlgt: command-line front end for the constrained group-testing library.
//
// Exit codes: 0 success / all checks passed, 1 a requested check found a
// verified failure, 2 usage or input error, 3 parameters infeasible for the
// requested operation.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rlgt/bounds.hpp"
#include "rlgt/construct.hpp"
#include "rlgt/decode.hpp"
#include "rlgt/matrix.hpp"
#include "rlgt/rng.hpp"
#include "rlgt/simulate.hpp"
#include "rlgt/verify.hpp"

namespace {

using namespace rlgt;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& given) {
    if (given) return *given;
    std::random_device rd;
    return (std::uint64_t{rd()} << 32) ^ rd();
}

void emit_matrix(const TestMatrix& m, const std::string& output) {
    if (output.empty() || output == "-")
        std::cout << to_text(m);
    else
        write_matrix_file(output, m);
}

std::string describe(const BoundValue& b) {
    std::string s = fmt(b.value);
    if (b.kind == BoundKind::lower_bound_tests && std::isfinite(b.raw) && b.raw != b.value)
        s += " (raw " + fmt(b.raw) + ")";
    for (const auto& a : b.assumptions)
        if (!a.holds) s += " [unmet: " + a.label + "]";
    return s;
}

// --- construct --------------------------------------------------------------

struct ConstructOpts {
    std::string type = "rand";
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::optional<std::uint32_t> d;
    std::optional<std::uint32_t> w;
    std::uint32_t t = 0;
    std::uint64_t t_base = 0;
    std::uint32_t alpha = 0;
    double target = 0.0;
    std::string regime = "zero-error";
    double p = 0.0;
    double delta = 0.25;
    double gamma = 0.5;
    double ct = 1.0;
    std::optional<std::uint64_t> seed;
    std::string output;
};

int run_construct(const ConstructOpts& o) {
    const std::uint64_t seed = resolve_seed(o.seed);

    if (o.type == "rand" || o.type == "randmatrix") {
        if (!o.d) throw std::invalid_argument("construct rand: --d is required");
        if ((o.t == 0) == (o.target == 0.0))
            throw std::invalid_argument("construct rand: give exactly one of --t and --target");
        const Regime regime = o.regime == "avg-case" ? Regime::avg_case : Regime::zero_error;
        if (o.regime != "avg-case" && o.regime != "zero-error")
            throw std::invalid_argument("construct rand: --regime must be zero-error or avg-case");

        std::uint32_t t = o.t;
        std::uint32_t alpha = o.alpha;
        if (o.target != 0.0) {
            if (o.alpha != 0)
                throw std::invalid_argument(
                    "construct rand: --alpha conflicts with --target (inversion picks alpha)");
            const MinTestsResult mt = min_tests(regime, o.n, o.k, *o.d, o.target);
            t = static_cast<std::uint32_t>(mt.t);
            alpha = mt.alpha;
            if (o.ct != 1.0) {
                t = static_cast<std::uint32_t>(std::ceil(o.ct * t));
                alpha = default_alpha(o.n, o.k, t, *o.d);
            }
        }
        if (alpha == 0) alpha = default_alpha(o.n, o.k, t, *o.d);

        SchemeParams p;
        p.n = o.n;
        p.k = o.k;
        p.d = o.d;
        p.t = t;
        p.alpha = alpha;
        p.seed = seed;
        const TestMatrix m = rand_matrix(p);
        const BoundValue bound = regime == Regime::zero_error
                                     ? disjunct_fail_ub(o.n, o.k, *o.d, t, alpha)
                                     : avg_fail_ub(o.n, o.k, *o.d, t, alpha);
        std::cerr << "# construct type=rand n=" << o.n << " k=" << o.k << " d=" << *o.d
                  << " t=" << t << " alpha=" << alpha << " seed=" << seed << " " << o.regime
                  << "-bound=" << fmt(bound.value) << "\n";
        emit_matrix(m, o.output);
        return kExitPass;
    }

    if (o.type == "spacer") {
        if (!o.d) throw std::invalid_argument("construct spacer: --d is required");
        if (o.k == 0) throw std::invalid_argument("construct spacer: -k is required");
        const double p = o.p != 0.0 ? o.p : 1.0 / o.k;
        std::uint64_t t_base = o.t_base;
        if ((t_base == 0) == (o.target == 0.0))
            throw std::invalid_argument(
                "construct spacer: give exactly one of --t-base and --target");
        if (o.target != 0.0) {
            const SpacerMinTests mt = min_tests_spacer(o.n, o.k, *o.d, o.target, p);
            t_base = mt.t_base;
        }
        const TestMatrix base =
            bernoulli_matrix(static_cast<std::uint32_t>(t_base), o.n, p, seed);
        const TestMatrix m = spacer_embed(base, *o.d);
        const BoundValue bound =
            spacer_fail_ub(o.n, o.k, p, static_cast<std::uint32_t>(t_base));
        std::cerr << "# construct type=spacer n=" << o.n << " k=" << o.k << " d=" << *o.d
                  << " t_base=" << t_base << " t=" << m.rows() << " p=" << fmt(p)
                  << " seed=" << seed << " base-bound=" << fmt(bound.value) << "\n";
        emit_matrix(m, o.output);
        return kExitPass;
    }

    if (o.type == "bernoulli") {
        if (o.t == 0 || o.p == 0.0)
            throw std::invalid_argument("construct bernoulli: --t and --p are required");
        const TestMatrix m = bernoulli_matrix(o.t, o.n, o.p, seed);
        std::cerr << "# construct type=bernoulli n=" << o.n << " t=" << o.t << " p=" << fmt(o.p)
                  << " seed=" << seed << "\n";
        emit_matrix(m, o.output);
        return kExitPass;
    }

    if (o.type == "qnagt") {
        if (!o.w) throw std::invalid_argument("construct qnagt: --w is required");
        const QnagtConstruction qc =
            qnagt_construct(o.n, o.k, *o.w, o.delta, o.gamma, seed);
        const BoundValue bound = qnagt_fail_ub(o.n, o.k, *o.w, qc.t);
        std::cerr << "# construct type=qnagt n=" << o.n << " k=" << o.k << " w=" << *o.w
                  << " t=" << qc.t << " p=" << fmt(qc.p) << " attempts=" << qc.attempts
                  << " seed=" << seed << " collision-bound=" << fmt(bound.value) << "\n";
        emit_matrix(qc.matrix, o.output);
        return kExitPass;
    }

    throw std::invalid_argument("construct: unknown --type " + o.type);
}

// --- verify -----------------------------------------------------------------

struct VerifyOpts {
    std::string matrix_path;
    std::optional<std::uint32_t> disjunct_k;
    std::uint64_t sampled_trials = 0;
    std::optional<std::uint32_t> runlength_gap;
    bool cyclic = false;
    std::optional<std::uint32_t> weight_cap;
    std::optional<std::uint32_t> qnagt_k;
    bool at_most = false;
    std::optional<std::uint32_t> private_column;
    std::uint32_t private_max = 0;
    std::uint64_t cap = kDefaultCheckCap;
    std::optional<std::uint64_t> seed;
    // Alternate spelling: `--check NAME` plus `--d/--k/--w` parameters.
    std::vector<std::string> checks;
    std::optional<std::uint32_t> d;
    std::optional<std::uint32_t> k;
    std::optional<std::uint32_t> w;
};

// Folds the `--check NAME --d/--k/--w` spelling into the per-check options so
// both entry points share one execution path.
void fold_named_checks(VerifyOpts& o) {
    auto need = [&](const std::optional<std::uint32_t>& v, const char* flag,
                    const char* name) -> std::uint32_t {
        if (!v)
            throw std::invalid_argument(std::string("verify --check ") + name + ": " + flag +
                                        " is required");
        return *v;
    };
    for (const std::string& name : o.checks) {
        if (name == "runlength")
            o.runlength_gap = need(o.d, "--d", "runlength");
        else if (name == "weight")
            o.weight_cap = need(o.w, "--w", "weight");
        else if (name == "disjunct")
            o.disjunct_k = need(o.k, "--k", "disjunct");
        else if (name == "qnagt-zero-error")
            o.qnagt_k = need(o.k, "--k", "qnagt-zero-error");
        else
            throw std::invalid_argument("verify: unknown --check " + name);
    }
}

std::string join(const std::vector<std::uint32_t>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(xs[i]);
    }
    return s;
}

int run_verify(const VerifyOpts& opts) {
    VerifyOpts o = opts;
    fold_named_checks(o);
    const TestMatrix m = read_matrix_file(o.matrix_path);
    std::cerr << "# verify " << o.matrix_path << ": t=" << m.rows() << " n=" << m.cols() << "\n";
    bool any_requested = false;
    bool any_failed = false;

    if (o.runlength_gap) {
        any_requested = true;
        const RunMode mode = o.cyclic ? RunMode::cyclic : RunMode::linear;
        const auto v = check_runlength(m, *o.runlength_gap, mode);
        if (v) {
            any_failed = true;
            std::cout << "runlength gap=" << *o.runlength_gap
                      << (o.cyclic ? " cyclic" : " linear") << ": FAIL column " << v->column
                      << " rows " << v->row_a << "," << v->row_b
                      << (v->wraparound ? " (wraparound)" : "") << "\n";
        } else {
            std::cout << "runlength gap=" << *o.runlength_gap
                      << (o.cyclic ? " cyclic" : " linear") << ": PASS\n";
        }
    }

    if (o.weight_cap) {
        any_requested = true;
        const auto v = check_weight(m, *o.weight_cap);
        if (v) {
            any_failed = true;
            std::cout << "weight cap=" << *o.weight_cap << ": FAIL column " << v->column
                      << " has weight " << v->weight << "\n";
        } else {
            std::cout << "weight cap=" << *o.weight_cap << ": PASS\n";
        }
    }

    if (o.disjunct_k) {
        any_requested = true;
        DisjunctReport rep;
        if (o.sampled_trials > 0) {
            rep = is_k_disjunct_sampled(m, *o.disjunct_k, o.sampled_trials,
                                        resolve_seed(o.seed));
        } else {
            rep = is_k_disjunct(m, *o.disjunct_k, o.cap);
        }
        std::string head = "disjunct k=" + std::to_string(*o.disjunct_k) +
                           (rep.exhaustive ? "" : " (sampled " + std::to_string(rep.trials) +
                                                      " seed " + std::to_string(rep.seed) + ")");
        if (rep.disjunct) {
            std::cout << head << ": PASS after " << rep.subsets_checked << " checks"
                      << (rep.exhaustive ? "" : " [probabilistic]") << "\n";
        } else {
            any_failed = true;
            std::cout << head << ": FAIL column " << rep.witness->column << " covered by {"
                      << join(rep.witness->covering) << "}\n";
        }
        for (std::uint32_t z : rep.zero_columns)
            std::cout << "  note: column " << z << " is all-zero\n";
    }

    if (o.qnagt_k) {
        any_requested = true;
        const WeightMode mode = o.at_most ? WeightMode::at_most_k : WeightMode::exactly_k;
        const QnagtReport rep = qnagt_zero_error_check(m, *o.qnagt_k, mode, o.cap);
        if (rep.zero_error) {
            std::cout << "qnagt zero-error k=" << *o.qnagt_k << " " << to_string(mode)
                      << ": PASS after " << rep.pairs_checked << " patterns\n";
        } else {
            any_failed = true;
            std::cout << "qnagt zero-error k=" << *o.qnagt_k << " " << to_string(mode)
                      << ": FAIL supports {" << join(rep.witness->first.indices()) << "} and {"
                      << join(rep.witness->second.indices()) << "} share an outcome\n";
        }
    }

    if (o.private_column) {
        any_requested = true;
        const std::uint32_t max_size = o.private_max ? o.private_max : m.rows();
        const auto set = find_private_set(m, *o.private_column, max_size, o.cap);
        if (set) {
            std::cout << "private-set column=" << *o.private_column << ": PASS rows {"
                      << join(*set) << "}\n";
        } else {
            any_failed = true;
            std::cout << "private-set column=" << *o.private_column << ": FAIL (none of size <= "
                      << max_size << ")\n";
        }
    }

    if (!any_requested)
        throw std::invalid_argument("verify: no check requested (see rlgt verify --help)");
    return any_failed ? kExitFail : kExitPass;
}

// --- decode -----------------------------------------------------------------

struct DecodeOpts {
    std::string matrix_path;
    std::string outcome_path;
    std::string method = "comp";
    std::uint32_t k = 0;
    bool at_most = false;
    bool quantitative = false;
    std::uint64_t cap = kDefaultCheckCap;
};

int run_decode(const DecodeOpts& o) {
    const TestMatrix m = read_matrix_file(o.matrix_path);
    Outcome y = read_outcome_file(o.outcome_path, Outcome::Kind::count);
    std::uint32_t max_value = 0;
    for (std::uint32_t v : y.values) max_value = std::max(max_value, v);
    if (!o.quantitative && max_value <= 1)
        y.kind = Outcome::Kind::boolean;
    else if (!o.quantitative)
        std::cerr << "# outcome has entries > 1; treating it as quantitative\n";

    const DecodeResult res = [&] {
        if (o.method == "comp") {
            if (y.kind != Outcome::Kind::boolean)
                throw std::invalid_argument("decode: comp needs a boolean outcome");
            return comp_decode(m, y);
        }
        if (o.method != "brute")
            throw std::invalid_argument("decode: --method must be comp or brute");
        if (o.k == 0) throw std::invalid_argument("decode brute: --k is required");
        const WeightMode mode = o.at_most ? WeightMode::at_most_k : WeightMode::exactly_k;
        return y.kind == Outcome::Kind::boolean
                   ? brute_force_nagt_decode(m, y, o.k, mode, o.cap)
                   : brute_force_qnagt_decode(m, y, o.k, mode, o.cap);
    }();
    if (res.ambiguous)
        std::cerr << "# outcome is ambiguous: " << res.candidates_checked
                  << " candidates inspected, several consistent\n";

    std::cout << join(res.estimate.indices()) << "\n";
    return res.ambiguous ? kExitFail : kExitPass;
}

// --- bounds -----------------------------------------------------------------

struct BoundsOpts {
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::optional<std::uint32_t> d;
    std::optional<std::uint32_t> w;
    std::uint32_t t = 0;
    std::uint32_t alpha = 0;
    double target = 0.0;
    double delta = 0.25;
    double gamma = 0.5;
};

int run_bounds(const BoundsOpts& o) {
    const auto line = [](const std::string& name, const BoundValue& b) {
        std::cout << name << " = " << describe(b) << "\n";
    };
    if (!o.d && !o.w)
        throw std::invalid_argument("bounds: give --d (runlength) and/or --w (weight cap)");

    if (o.d) {
        const std::uint32_t d = *o.d;
        line("lemma1_lb", lemma1_lb(o.n, o.k, d));
        line("zero_error_lb", zero_error_lb(o.n, o.k, d));
        if (o.k < o.n) {
            line("avg_case_lb", avg_case_lb(o.n, o.k, d));
            line("qnagt_counting_lb", qnagt_counting_lb(o.n, o.k, d));
        }
        line("qnagt_entropy_lb", qnagt_entropy_lb(o.n, o.k, d, o.delta));

        if (o.t != 0) {
            const std::uint32_t alpha =
                o.alpha != 0 ? o.alpha : default_alpha(o.n, o.k, o.t, d);
            std::cout << "alpha = " << alpha << "\n";
            line("disjunct_fail_ub", disjunct_fail_ub(o.n, o.k, d, o.t, alpha));
            line("avg_fail_ub", avg_fail_ub(o.n, o.k, d, o.t, alpha));
            line("qnagt_fail_ub_at_density",
                 qnagt_fail_ub_at_density(o.n, o.k, 1.0 / (2.0 * (d + 1.0)), o.t));
        }
        if (o.target != 0.0) {
            const MinTestsResult ze = min_tests(Regime::zero_error, o.n, o.k, d, o.target);
            std::cout << "min_tests[zero-error] t=" << ze.t << " alpha=" << ze.alpha
                      << " bound=" << fmt(ze.bound.value) << "\n";
            const MinTestsResult av = min_tests(Regime::avg_case, o.n, o.k, d, o.target);
            std::cout << "min_tests[avg-case] t=" << av.t << " alpha=" << av.alpha
                      << " bound=" << fmt(av.bound.value) << "\n";
            const MinTestsResult qn = min_tests_qnagt_runlength(o.n, o.k, d, o.target);
            std::cout << "min_tests[qnagt-runlength] t=" << qn.t
                      << " bound=" << fmt(qn.bound.value) << "\n";
            const SpacerMinTests sp = min_tests_spacer(o.n, o.k, d, o.target);
            std::cout << "min_tests[spacer] t_total=" << sp.t_total << " t_base=" << sp.t_base
                      << " bound=" << fmt(sp.bound.value) << "\n";
        }
    }

    if (o.w) {
        const std::uint32_t w = *o.w;
        if (*o.w >= 2) {
            const std::uint32_t t = qnagt_tests(o.n, o.k, w, o.delta, o.gamma);
            std::cout << "qnagt_tests = " << t << " (density " << fmt(w / (2.0 * t)) << ")\n";
            line("qnagt_fail_ub", qnagt_fail_ub(o.n, o.k, w, t));
            line("qnagt_entropy_lb_weight_form",
                 qnagt_entropy_lb_weight_form(o.n, o.k, w, t, o.delta));
        }
        if (o.t != 0) line("qnagt_fail_ub at --t", qnagt_fail_ub(o.n, o.k, w, o.t));
        if (o.target != 0.0) {
            const MinTestsResult qn = min_tests(Regime::qnagt, o.n, o.k, w, o.target);
            std::cout << "min_tests[qnagt] t=" << qn.t << " bound=" << fmt(qn.bound.value)
                      << "\n";
        }
    }
    return kExitPass;
}

// --- simulate / sweep -------------------------------------------------------

struct SimulateOpts {
    std::string experiment = "zero-error";
    std::uint32_t n = 0;
    std::uint32_t k = 0;
    std::optional<std::uint32_t> d;
    std::optional<std::uint32_t> w;
    std::uint32_t t = 0;
    std::uint32_t alpha = 0;
    double target = 0.0;
    std::uint64_t trials = 200;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    double delta = 0.25;
    double gamma = 0.5;
    std::uint64_t check_cap = kDefaultCheckCap;
};

int report_exit(const SimulationReport& r) {
    std::cout << csv_header() << "\n" << csv_row(r) << "\n";
    std::cerr << "# " << r.experiment << ": failures " << r.failures << "/" << r.trials
              << " rate " << fmt(r.empirical_rate) << " bound " << fmt(r.analytical_bound.value)
              << " wall " << fmt(r.wall_seconds) << "s\n";
    if (r.wilson.lo > r.analytical_bound.value) {
        std::cerr << "# empirical rate is above the analytical bound with 95% confidence\n";
        return kExitFail;
    }
    return kExitPass;
}

int run_simulate(const SimulateOpts& o) {
    SimOptions options;
    options.threads = o.threads;
    options.check_cap = o.check_cap;

    SchemeParams p;
    p.n = o.n;
    p.k = o.k;
    p.seed = resolve_seed(o.seed);
    p.delta = o.delta;
    p.gamma = o.gamma;

    if (o.experiment == "qnagt") {
        if (!o.w) throw std::invalid_argument("simulate qnagt: --w is required");
        p.w = o.w;
        return report_exit(run_qnagt_experiment(p, o.trials, options));
    }

    if (o.experiment != "zero-error" && o.experiment != "avg-case")
        throw std::invalid_argument("simulate: --experiment must be zero-error, avg-case, or qnagt");
    if (!o.d) throw std::invalid_argument("simulate: --d is required");
    p.d = o.d;
    const Regime regime = o.experiment == "zero-error" ? Regime::zero_error : Regime::avg_case;
    if ((o.t == 0) == (o.target == 0.0))
        throw std::invalid_argument("simulate: give exactly one of --t and --target");
    if (o.t != 0) {
        p.t = o.t;
        p.alpha = o.alpha;
    } else {
        const MinTestsResult mt = min_tests(regime, o.n, o.k, *o.d, o.target);
        p.t = static_cast<std::uint32_t>(mt.t);
        p.alpha = mt.alpha;
        std::cerr << "# inverted target " << fmt(o.target) << ": t=" << p.t
                  << " alpha=" << p.alpha << "\n";
    }
    return report_exit(regime == Regime::zero_error
                           ? run_zero_error_experiment(p, o.trials, options)
                           : run_avg_case_experiment(p, o.trials, options));
}

struct SweepOpts {
    std::string regime = "zero-error";
    std::vector<std::uint32_t> n_values;
    std::vector<std::uint32_t> k_values;
    std::vector<std::uint32_t> d_values;
    std::vector<std::uint32_t> w_values;
    double target = 0.01;
    std::uint64_t trials = 100;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
    double delta = 0.25;
    double gamma = 0.5;
    std::uint64_t check_cap = kDefaultCheckCap;
};

int run_sweep(const SweepOpts& o) {
    Regime regime;
    if (o.regime == "zero-error")
        regime = Regime::zero_error;
    else if (o.regime == "avg-case")
        regime = Regime::avg_case;
    else if (o.regime == "qnagt")
        regime = Regime::qnagt;
    else
        throw std::invalid_argument("sweep: --regime must be zero-error, avg-case, or qnagt");

    SweepGrid grid;
    grid.n_values = o.n_values;
    grid.k_values = o.k_values;
    grid.dw_values = regime == Regime::qnagt ? o.w_values : o.d_values;
    if (grid.dw_values.empty())
        throw std::invalid_argument(regime == Regime::qnagt ? "sweep qnagt: --w is required"
                                                            : "sweep: --d is required");
    grid.target = o.target;
    grid.trials = o.trials;
    grid.seed = resolve_seed(o.seed);
    grid.delta = o.delta;
    grid.gamma = o.gamma;

    SimOptions options;
    options.threads = o.threads;
    options.check_cap = o.check_cap;

    std::cerr << "# sweep " << o.regime << " seed=" << grid.seed << "\n";
    const std::vector<SimulationReport> rows = sweep(regime, grid, options);
    std::cout << csv_header() << "\n";
    int rc = kExitPass;
    for (const SimulationReport& r : rows) {
        std::cout << csv_row(r) << "\n";
        if (r.trials > 0 && r.wilson.lo > r.analytical_bound.value) rc = kExitFail;
    }
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constrained group-testing designs: construct, verify, decode, bound, simulate"};
    app.require_subcommand(1);

    ConstructOpts construct_opts;
    CLI::App* construct = app.add_subcommand("construct", "generate a test matrix");
    construct->add_option("--type,--scheme", construct_opts.type,
                          "rand|randmatrix | spacer | bernoulli | qnagt (default rand)");
    construct->add_option("-n,--n,--items", construct_opts.n, "number of items")->required();
    construct->add_option("-k,--k,--defectives", construct_opts.k, "defective-set size");
    construct->add_option("--d", construct_opts.d, "runlength gap");
    construct->add_option("--w", construct_opts.w, "column-weight cap (qnagt)");
    construct->add_option("--t", construct_opts.t, "number of tests (rand, bernoulli)");
    construct->add_option("--t-base", construct_opts.t_base, "base rows before spacing (spacer)");
    construct->add_option("--alpha", construct_opts.alpha, "ones per column (rand)");
    construct->add_option("--target", construct_opts.target,
                          "failure-probability target; derives t by inverting the bound");
    construct->add_option("--regime", construct_opts.regime,
                          "bound to invert for rand: zero-error | avg-case");
    construct->add_option("--p", construct_opts.p, "density (bernoulli, spacer; default 1/k)");
    construct->add_option("--delta", construct_opts.delta, "qnagt delta");
    construct->add_option("--gamma", construct_opts.gamma, "qnagt gamma");
    construct->add_option("--ct", construct_opts.ct, "scale factor applied to a derived t");
    construct->add_option("--seed", construct_opts.seed, "RNG seed (default: random, echoed)");
    construct->add_option("-o,--output", construct_opts.output, "output file (default stdout)");

    VerifyOpts verify_opts;
    CLI::App* verify = app.add_subcommand("verify", "check properties of a matrix file");
    verify->add_option("matrix", verify_opts.matrix_path, "matrix file")->required();
    verify->add_option("--disjunct", verify_opts.disjunct_k, "check k-disjunctness for this k");
    verify->add_option("--sampled", verify_opts.sampled_trials,
                       "sample this many (column, subset) pairs instead of exhausting");
    verify->add_option("--runlength", verify_opts.runlength_gap, "check a runlength gap");
    verify->add_flag("--cyclic", verify_opts.cyclic, "use the cyclic runlength rule");
    verify->add_option("--weight", verify_opts.weight_cap, "check a column-weight cap");
    verify->add_option("--qnagt", verify_opts.qnagt_k, "check quantitative zero-error for this k");
    verify->add_flag("--at-most", verify_opts.at_most, "use at-most-k supports (with --qnagt)");
    verify->add_option("--private-set", verify_opts.private_column,
                       "find a private row set for this column");
    verify->add_option("--max-size", verify_opts.private_max, "private-set size limit");
    verify->add_option("--cap", verify_opts.cap, "work cap for exhaustive checks");
    verify->add_option("--seed", verify_opts.seed, "seed for --sampled");
    verify->add_option("--check", verify_opts.checks,
                       "named check: runlength | weight | disjunct | qnagt-zero-error "
                       "(parameters via --d/--w/--k; repeatable)");
    verify->add_option("--d", verify_opts.d, "gap for --check runlength");
    verify->add_option("--k", verify_opts.k, "k for --check disjunct / qnagt-zero-error");
    verify->add_option("--w", verify_opts.w, "cap for --check weight");

    DecodeOpts decode_opts;
    CLI::App* decode = app.add_subcommand("decode", "decode an outcome vector");
    decode->add_option("--matrix", decode_opts.matrix_path, "matrix file")->required();
    decode->add_option("--outcome", decode_opts.outcome_path, "outcome file")->required();
    decode->add_option("--method,--decoder", decode_opts.method, "comp | brute (default comp)");
    decode->add_option("--k", decode_opts.k, "candidate weight (brute)");
    decode->add_flag("--at-most", decode_opts.at_most, "at-most-k candidates (brute)");
    decode->add_flag("--quantitative", decode_opts.quantitative,
                     "force count semantics for the outcome");
    decode->add_option("--cap", decode_opts.cap, "candidate cap for brute decoding");

    BoundsOpts bounds_opts;
    CLI::App* bounds = app.add_subcommand("bounds", "evaluate bounds and invert them");
    bounds->add_option("-n,--n,--items", bounds_opts.n, "number of items")->required();
    bounds->add_option("-k,--k,--defectives", bounds_opts.k, "defective-set size")->required();
    bounds->add_option("--d", bounds_opts.d, "runlength gap");
    bounds->add_option("--w", bounds_opts.w, "column-weight cap");
    bounds->add_option("--t", bounds_opts.t, "evaluate failure bounds at this t");
    bounds->add_option("--alpha", bounds_opts.alpha, "ones per column (default: derived)");
    bounds->add_option("--target", bounds_opts.target, "invert bounds to this failure target");
    bounds->add_option("--delta", bounds_opts.delta, "qnagt delta");
    bounds->add_option("--gamma", bounds_opts.gamma, "qnagt gamma");

    SimulateOpts simulate_opts;
    CLI::App* simulate = app.add_subcommand("simulate", "run one Monte-Carlo experiment (CSV)");
    simulate->add_option("--experiment", simulate_opts.experiment,
                         "zero-error | avg-case | qnagt");
    simulate->add_option("-n,--n,--items", simulate_opts.n, "number of items")->required();
    simulate->add_option("-k,--k,--defectives", simulate_opts.k, "defective-set size")->required();
    simulate->add_option("--d", simulate_opts.d, "runlength gap (boolean experiments)");
    simulate->add_option("--w", simulate_opts.w, "column-weight cap (qnagt)");
    simulate->add_option("--t", simulate_opts.t, "number of tests");
    simulate->add_option("--alpha", simulate_opts.alpha, "ones per column (default: derived)");
    simulate->add_option("--target", simulate_opts.target, "derive t by inverting the bound");
    simulate->add_option("--trials", simulate_opts.trials, "Monte-Carlo trials (default 200)");
    simulate->add_option("--threads", simulate_opts.threads, "worker threads (default 1)");
    simulate->add_option("--seed", simulate_opts.seed, "master seed (default: random, echoed)");
    simulate->add_option("--delta", simulate_opts.delta, "qnagt delta");
    simulate->add_option("--gamma", simulate_opts.gamma, "qnagt gamma");
    simulate->add_option("--cap", simulate_opts.check_cap, "work cap for per-trial verification");

    SweepOpts sweep_opts;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "grid of Monte-Carlo experiments (CSV)");
    sweep_cmd->add_option("--regime", sweep_opts.regime, "zero-error | avg-case | qnagt");
    sweep_cmd->add_option("--n", sweep_opts.n_values, "item counts")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--k", sweep_opts.k_values, "defective-set sizes")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--d", sweep_opts.d_values, "runlength gaps")->delimiter(',');
    sweep_cmd->add_option("--w", sweep_opts.w_values, "weight caps (qnagt)")->delimiter(',');
    sweep_cmd->add_option("--target", sweep_opts.target, "failure target for t inversion");
    sweep_cmd->add_option("--trials", sweep_opts.trials, "trials per cell (default 100)");
    sweep_cmd->add_option("--threads", sweep_opts.threads, "worker threads");
    sweep_cmd->add_option("--seed", sweep_opts.seed, "master seed (default: random, echoed)");
    sweep_cmd->add_option("--delta", sweep_opts.delta, "qnagt delta");
    sweep_cmd->add_option("--gamma", sweep_opts.gamma, "qnagt gamma");
    sweep_cmd->add_option("--cap", sweep_opts.check_cap, "work cap for per-trial verification");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (construct->parsed()) return run_construct(construct_opts);
        if (verify->parsed()) return run_verify(verify_opts);
        if (decode->parsed()) return run_decode(decode_opts);
        if (bounds->parsed()) return run_bounds(bounds_opts);
        if (simulate->parsed()) return run_simulate(simulate_opts);
        if (sweep_cmd->parsed()) return run_sweep(sweep_opts);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const DecodingError& e) {
        std::cerr << "decoding failed: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
