// Acceptance gate: ten end-to-end guarantees of the library, each printed as
// exactly one "PASS criterion N: ..." or "FAIL criterion N: ..." line.  The
// process exits nonzero if any criterion fails.
//
// Monte-Carlo criteria (2, 4, 6) run at fixed, documented master seeds and
// compare the empirical failure rate against the analytical bound through
// the lower edge of a 95% Wilson interval: they fail only when the data are
// inconsistent with the bound at that confidence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rlgt/bounds.hpp"
#include "rlgt/construct.hpp"
#include "rlgt/decode.hpp"
#include "rlgt/matrix.hpp"
#include "rlgt/rng.hpp"
#include "rlgt/simulate.hpp"
#include "rlgt/verify.hpp"

namespace {

using namespace rlgt;

// ---- pinned tolerances and seeds -------------------------------------------

constexpr double kIdentityTol = 1e-12;  // closed-form identity comparisons
constexpr double kReferenceTol = 1e-9;  // frozen reference values
constexpr double kGrowthFactor = 2.0;   // trend-test growth ceiling
constexpr std::uint64_t kSoundnessSeed = 1001;
constexpr std::uint64_t kDisjunctSeed = 2024;
constexpr std::uint64_t kAvgCaseSeed = 4242;
constexpr std::uint64_t kQnagtSeed = 606;
constexpr std::uint64_t kReproSeed = 77;
constexpr std::uint64_t kFixtureSeedLimit = 512;

bool close_rel(double a, double b, double tol) {
    return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// ---- criterion 1: construction soundness -----------------------------------

bool criterion1(std::string& detail) {
    const std::uint64_t draws = 1000;
    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        Rng r(derive_seed(kSoundnessSeed, i));
        const auto d = static_cast<std::uint32_t>(r.below(7));
        const std::uint32_t window = 2 * d + 1;
        const auto t = window + static_cast<std::uint32_t>(r.below(151));
        const std::uint64_t max_alpha = std::min<std::uint64_t>(4, t / window);
        const auto alpha = static_cast<std::uint32_t>(1 + r.below(max_alpha));
        const auto n = static_cast<std::uint32_t>(2 + r.below(39));

        SchemeParams p;
        p.n = n;
        p.k = 1;
        p.d = d;
        p.t = t;
        p.alpha = alpha;
        p.seed = derive_seed(derive_seed(kSoundnessSeed, i), 1);
        const TestMatrix m = rand_matrix(p);

        bool ok = !check_runlength(m, d, RunMode::cyclic).has_value();
        for (std::uint32_t j = 0; j < m.cols() && ok; ++j) ok = m.column_weight(j) == alpha;
        violations += ok ? 0 : 1;
    }
    std::ostringstream os;
    os << (draws - violations) << "/" << draws
       << " random designs meet the cyclic gap and exact column weight (tolerance: zero)";
    detail = os.str();
    return violations == 0;
}

// ---- criterion 2: disjunctness of the runlength design ----------------------

bool criterion2(std::string& detail) {
    bool ok = true;
    std::ostringstream os;
    os << "disjunctness failures vs bound at (n=16,k=2):";
    for (std::uint32_t d : {0u, 1u, 3u}) {
        const MinTestsResult mt = min_tests(Regime::zero_error, 16, 2, d, 1.0 / 16);
        ok = ok && mt.t == 90 + 10 * d && mt.alpha == 6 &&
             close_rel(mt.bound.value, 0.05990496826688199, kReferenceTol);

        SchemeParams p;
        p.n = 16;
        p.k = 2;
        p.d = d;
        p.t = static_cast<std::uint32_t>(mt.t);
        p.alpha = mt.alpha;
        p.seed = derive_seed(kDisjunctSeed, d);
        const SimulationReport rep = run_zero_error_experiment(p, 500);
        ok = ok && rep.wilson.lo <= rep.analytical_bound.value;
        os << " d=" << d << ": " << rep.failures << "/500 (bound "
           << rep.analytical_bound.value << ")";
    }
    detail = os.str();
    return ok;
}

// ---- fixture corpus for criteria 3 and 5 ------------------------------------

struct Fixture {
    std::string name;
    TestMatrix m;
    std::uint32_t k;
};

TestMatrix find_disjunct_rand(std::uint32_t n, std::uint32_t k, std::uint32_t d, std::uint32_t t,
                              std::uint32_t alpha) {
    for (std::uint64_t seed = 0; seed < kFixtureSeedLimit; ++seed) {
        SchemeParams p;
        p.n = n;
        p.k = k;
        p.d = d;
        p.t = t;
        p.alpha = alpha;
        p.seed = seed;
        const TestMatrix m = rand_matrix(p);
        if (oracles::is_disjunct_brute(m, k)) return m;
    }
    throw std::runtime_error("no disjunct runlength fixture found in the seed scan");
}

TestMatrix find_disjunct_bernoulli(std::uint32_t t, std::uint32_t n, double p, std::uint32_t k) {
    for (std::uint64_t seed = 0; seed < kFixtureSeedLimit; ++seed) {
        const TestMatrix m = bernoulli_matrix(t, n, p, seed);
        if (oracles::is_disjunct_brute(m, k)) return m;
    }
    throw std::runtime_error("no disjunct Bernoulli fixture found in the seed scan");
}

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> fx = [] {
        std::vector<Fixture> out;
        out.push_back({"identity-8", TestMatrix::identity(8), 3});
        out.push_back({"identity-14", TestMatrix::identity(14), 3});
        out.push_back({"spaced-identity-8", spacer_embed(TestMatrix::identity(8), 2), 3});
        {
            const MinTestsResult mt = min_tests(Regime::zero_error, 12, 2, 1, 1.0 / 12);
            out.push_back({"runlength-12",
                           find_disjunct_rand(12, 2, 1, static_cast<std::uint32_t>(mt.t),
                                              mt.alpha),
                           2});
        }
        {
            const MinTestsResult mt = min_tests(Regime::zero_error, 10, 3, 2, 0.25);
            out.push_back({"runlength-10",
                           find_disjunct_rand(10, 3, 2, static_cast<std::uint32_t>(mt.t),
                                              mt.alpha),
                           3});
        }
        out.push_back({"bernoulli-14", find_disjunct_bernoulli(100, 14, 0.25, 3), 3});
        return out;
    }();
    return fx;
}

// ---- criterion 3: COMP equals the truth on verified fixtures ----------------

void supports_up_to(std::uint32_t n, std::uint32_t k,
                    std::vector<std::vector<std::uint32_t>>& out) {
    out.clear();
    out.push_back({});
    if (k >= 1)
        for (std::uint32_t a = 0; a < n; ++a) out.push_back({a});
    if (k >= 2)
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b) out.push_back({a, b});
    if (k >= 3)
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b)
                for (std::uint32_t c = b + 1; c < n; ++c) out.push_back({a, b, c});
}

bool criterion3(std::string& detail) {
    std::uint64_t supports_checked = 0;
    std::uint64_t mismatches = 0;
    std::vector<std::vector<std::uint32_t>> all;
    for (const Fixture& f : fixtures()) {
        if (!oracles::is_disjunct_brute(f.m, f.k)) {
            detail = "fixture " + f.name + " is not disjunct: corpus invalid";
            return false;
        }
        supports_up_to(f.m.cols(), f.k, all);
        for (const auto& idx : all) {
            const SparseSupport x(f.m.cols(), idx);
            const DecodeResult res = comp_decode(f.m, or_outcome(f.m, x));
            ++supports_checked;
            if (!(res.estimate == x)) ++mismatches;
        }
    }
    std::ostringstream os;
    os << "COMP recovered " << (supports_checked - mismatches) << "/" << supports_checked
       << " supports exactly across " << fixtures().size()
       << " verified disjunct fixtures (tolerance: zero)";
    detail = os.str();
    return mismatches == 0;
}

// ---- criterion 4: average-case decoding vs bound ----------------------------

bool criterion4(std::string& detail) {
    struct Point {
        std::uint32_t k, d;
        std::uint64_t t_ref;
        std::uint32_t alpha_ref;
        double bound_ref;
    };
    const std::vector<Point> points = {
        {10, 20, 3530, 67, 0.0009547476481690996},
        {5, 100, 1201, 5, 0.000990256061684832},
    };
    bool ok = true;
    std::ostringstream os;
    os << "COMP failure rate vs bound at n=1000:";
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point& pt = points[i];
        const MinTestsResult mt = min_tests(Regime::avg_case, 1000, pt.k, pt.d, 1.0 / 1000);
        ok = ok && mt.t == pt.t_ref && mt.alpha == pt.alpha_ref &&
             close_rel(mt.bound.value, pt.bound_ref, kReferenceTol);

        SchemeParams p;
        p.n = 1000;
        p.k = pt.k;
        p.d = pt.d;
        p.t = static_cast<std::uint32_t>(mt.t);
        p.alpha = mt.alpha;
        p.seed = derive_seed(kAvgCaseSeed, i);
        const SimulationReport rep = run_avg_case_experiment(p, 2000);
        ok = ok && rep.wilson.lo <= rep.analytical_bound.value;
        os << " (k=" << pt.k << ",d=" << pt.d << "): " << rep.failures << "/2000 (bound "
           << rep.analytical_bound.value << ")";
    }
    detail = os.str();
    return ok;
}

// ---- criterion 5: private sets on the fixture corpus ------------------------

bool criterion5(std::string& detail) {
    std::uint64_t columns_checked = 0;
    std::uint64_t missing = 0;
    for (const Fixture& f : fixtures()) {
        const std::uint32_t w = f.m.max_column_weight();
        const std::uint32_t limit = (2 * w + f.k - 1) / f.k;  // ceil(2w/k)
        for (std::uint32_t j = 0; j < f.m.cols(); ++j) {
            ++columns_checked;
            const auto s = find_private_set(f.m, j, limit);
            if (!s.has_value() || s->size() > limit) ++missing;
        }
    }
    std::ostringstream os;
    os << (columns_checked - missing) << "/" << columns_checked
       << " fixture columns have a private set of size <= ceil(2w/k) (tolerance: zero)";
    detail = os.str();
    return missing == 0;
}

// ---- criterion 6: quantitative zero-error vs bound --------------------------

bool criterion6(std::string& detail) {
    SchemeParams p;
    p.n = 12;
    p.k = 2;
    p.w = 8;
    p.delta = 0.4;
    p.gamma = 0.5;
    p.seed = kQnagtSeed;
    const SimulationReport rep = run_qnagt_experiment(p, 300);
    const bool ok = rep.t == 12 &&
                    close_rel(rep.analytical_bound.value, 0.018229539179403644, kReferenceTol) &&
                    rep.wilson.lo <= rep.analytical_bound.value;
    std::ostringstream os;
    os << "quantitative collision failures at (n=12,k=2,w=8): " << rep.failures
       << "/300 within bound " << rep.analytical_bound.value;
    detail = os.str();
    return ok;
}

// ---- criterion 7: lower bounds never cross the inverted upper bounds --------

bool criterion7(std::string& detail) {
    const std::vector<std::uint32_t> ns = {32, 64, 128, 256, 512};
    const std::vector<std::uint32_t> ks = {2, 3, 4, 6, 8};
    const std::vector<std::uint32_t> ds = {1, 2, 4, 8, 16, 32, 64, 128};
    std::uint64_t comparisons = 0;
    std::uint64_t violations = 0;
    const auto compare = [&](double lb, std::uint64_t t) {
        ++comparisons;
        if (lb > static_cast<double>(t)) ++violations;
    };
    for (std::uint32_t n : ns)
        for (std::uint32_t k : ks)
            for (std::uint32_t d : ds) {
                const double target = 1.0 / n;
                const std::uint64_t tze = min_tests(Regime::zero_error, n, k, d, target).t;
                const std::uint64_t tav = min_tests(Regime::avg_case, n, k, d, target).t;
                const std::uint64_t tq = min_tests_qnagt_runlength(n, k, d, target).t;

                compare(lemma1_lb(n, k, d).value, tze);
                if (std::uint64_t{k} * (d + 1) >= 4) compare(zero_error_lb(n, k, d).value, tze);
                if (d >= 2 * k) compare(avg_case_lb(n, k, d).value, tav);
                if (d >= 2 * k) compare(qnagt_counting_lb(n, k, d).value, tq);
                compare(qnagt_entropy_lb(n, k, d, 0.25).value, tq);
            }
    std::ostringstream os;
    os << comparisons << " lower-vs-achievable comparisons over a 200-point grid, " << violations
       << " violations (expected 840 and 0)";
    detail = os.str();
    return comparisons == 840 && violations == 0;
}

// ---- criterion 8: analytic identities and inequalities ----------------------

bool criterion8(std::string& detail) {
    std::uint64_t checks = 0;
    std::uint64_t failed = 0;
    const auto expect = [&](bool ok) {
        ++checks;
        if (!ok) ++failed;
    };

    expect(binary_entropy(0.5) == 1.0);

    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        expect(std::fabs(collision_prob(1, p) - (1.0 - 2.0 * p * (1.0 - p))) <= kIdentityTol);
    }

    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        for (std::uint32_t l = 1; l <= 200; ++l) {
            if (l * p * (1.0 - p) < 5.0) continue;
            expect(collision_prob(l, p) <=
                   1.0 / std::sqrt(2.0 * l * p * (1.0 - p)) + kIdentityTol);
        }
    }

    for (double p : {0.1, 0.3, 0.5})
        for (std::uint32_t l = 1; l <= 80; ++l)
            expect(collision_prob(l + 1, p) <= collision_prob(l, p) + kIdentityTol);

    for (std::uint32_t n : {60u, 256u})
        for (std::uint32_t k : {2u, 4u})
            for (std::uint32_t d : {1u, 3u, 7u})
                for (double delta : {0.25, 0.4}) {
                    const double t = 100.0 * (d + 1);
                    const double a = qnagt_entropy_lb(n, k, d, delta).raw;
                    const double b = qnagt_entropy_lb_weight_form(n, k, 100.0, t, delta).raw;
                    expect(close_rel(a, b, kReferenceTol));
                }

    std::ostringstream os;
    os << (checks - failed) << "/" << checks
       << " identity and inequality checks within pinned tolerances";
    detail = os.str();
    return failed == 0;
}

// ---- criterion 9: cost trends ----------------------------------------------

bool criterion9(std::string& detail) {
    bool ok = true;
    std::ostringstream os;

    // (i) the average-case operating point degrades gracefully in d: within
    // a factor of 2 of unconstrained while d <= k, and at most linear growth
    // under doubling after that.
    struct TrendPoint {
        std::uint32_t n, k;
        std::vector<std::uint32_t> chain;  // doubling chain, starting at k
    };
    const std::vector<TrendPoint> trend = {
        {16, 4, {4, 8, 16, 32, 64}},
        {1000, 2, {2, 4, 8, 16, 32}},
    };
    double worst_small = 0.0, worst_double = 0.0;
    for (const TrendPoint& tp : trend) {
        const double target = 1.0 / tp.n;
        const std::uint64_t t0 = min_tests(Regime::avg_case, tp.n, tp.k, 0, target).t;
        for (std::uint32_t d = 1; d <= tp.k; ++d) {
            const std::uint64_t td = min_tests(Regime::avg_case, tp.n, tp.k, d, target).t;
            const double ratio = static_cast<double>(td) / static_cast<double>(t0);
            worst_small = std::max(worst_small, ratio);
            ok = ok && ratio <= kGrowthFactor;
        }
        std::uint64_t prev = min_tests(Regime::avg_case, tp.n, tp.k, tp.chain.front(), target).t;
        for (std::size_t i = 1; i < tp.chain.size(); ++i) {
            const std::uint64_t cur =
                min_tests(Regime::avg_case, tp.n, tp.k, tp.chain[i], target).t;
            const double ratio = static_cast<double>(cur) / static_cast<double>(prev);
            worst_double = std::max(worst_double, ratio);
            ok = ok && ratio <= kGrowthFactor;
            prev = cur;
        }
    }

    // (ii) spacing a Bernoulli design is costlier than the constrained
    // design by at least k/(1 + k/d) once k and d are both >= 4.
    double worst_margin = 1e9;
    for (std::uint32_t k : {4u, 8u})
        for (std::uint32_t d : {4u, 8u, 16u}) {
            const double target = 1.0 / 256;
            const std::uint64_t trand = min_tests(Regime::zero_error, 256, k, d, target).t;
            const std::uint64_t tsp = min_tests_spacer(256, k, d, target).t_total;
            const double ratio = static_cast<double>(tsp) / static_cast<double>(trand);
            const double threshold = k / (1.0 + static_cast<double>(k) / d);
            worst_margin = std::min(worst_margin, ratio / threshold);
            ok = ok && ratio >= threshold;
        }

    os << "growth in d bounded (worst small-d factor " << worst_small << ", worst doubling "
       << worst_double << " vs ceiling " << kGrowthFactor << "); spacer/constrained ratio >= "
       << "k/(1+k/d) with margin " << worst_margin << "x";
    detail = os.str();
    return ok;
}

// ---- criterion 10: reproducibility across worker counts ---------------------

bool criterion10(std::string& detail) {
    bool ok = true;

    SimOptions one;
    one.threads = 1;
    SimOptions four;
    four.threads = 4;

    {
        SchemeParams p;
        p.n = 24;
        p.k = 2;
        p.d = 1;
        p.t = 40;
        p.alpha = 4;
        p.seed = kReproSeed;
        ok = ok && csv_row(run_zero_error_experiment(p, 100, one)) ==
                       csv_row(run_zero_error_experiment(p, 100, four));
    }
    {
        SchemeParams p;
        p.n = 100;
        p.k = 3;
        p.d = 2;
        p.t = 120;
        p.alpha = 0;
        p.seed = derive_seed(kReproSeed, 1);
        ok = ok && csv_row(run_avg_case_experiment(p, 200, one)) ==
                       csv_row(run_avg_case_experiment(p, 200, four));
    }
    {
        SchemeParams p;
        p.n = 12;
        p.k = 2;
        p.w = 8;
        p.delta = 0.4;
        p.gamma = 0.5;
        p.seed = derive_seed(kReproSeed, 2);
        ok = ok && csv_row(run_qnagt_experiment(p, 60, one)) ==
                       csv_row(run_qnagt_experiment(p, 60, four));
    }
    {
        SweepGrid grid;
        grid.n_values = {16, 24};
        grid.k_values = {2};
        grid.dw_values = {1, 2};
        grid.target = 0.25;
        grid.trials = 20;
        grid.seed = derive_seed(kReproSeed, 3);
        const auto join = [](const std::vector<SimulationReport>& rows) {
            std::string s;
            for (const SimulationReport& r : rows) s += csv_row(r) + "\n";
            return s;
        };
        ok = ok && join(sweep(Regime::avg_case, grid, one)) ==
                       join(sweep(Regime::avg_case, grid, four));
    }

    detail = ok ? "CSV output byte-identical across 1 and 4 workers for all three experiments "
                  "and a sweep"
                : "CSV output differs between 1 and 4 workers";
    return ok;
}

// ---- driver ----------------------------------------------------------------

template <typename F>
bool run_criterion(int idx, F f) {
    std::string detail;
    bool ok = false;
    try {
        ok = f(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("unhandled exception: ") + e.what();
    }
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, detail.c_str());
    std::fflush(stdout);
    return ok;
}

}  // namespace

int main() {
    bool all = true;
    all &= run_criterion(1, criterion1);
    all &= run_criterion(2, criterion2);
    all &= run_criterion(3, criterion3);
    all &= run_criterion(4, criterion4);
    all &= run_criterion(5, criterion5);
    all &= run_criterion(6, criterion6);
    all &= run_criterion(7, criterion7);
    all &= run_criterion(8, criterion8);
    all &= run_criterion(9, criterion9);
    all &= run_criterion(10, criterion10);
    return all ? 0 : 1;
}
