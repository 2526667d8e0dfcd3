#include "rlgt/construct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "rlgt/common.hpp"

namespace rlgt {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

void SchemeParams::validate_for_rand_matrix() const {
    if (k < 1 || k > n) bad("SchemeParams: need 1 <= k <= n");
    if (t < 1) bad("SchemeParams: need t >= 1");
    const std::uint64_t window = 2ull * d.value_or(0) + 1;
    if (alpha < 1) bad("SchemeParams: need alpha >= 1");
    if (std::uint64_t{alpha} * window > t)
        bad("SchemeParams: alpha exceeds floor(t/(2d+1)) = " + std::to_string(t / window) +
            "; the live list would empty before placing alpha ones");
}

std::uint32_t default_alpha(std::uint32_t n, std::uint32_t k, std::uint32_t t, std::uint32_t d) {
    if (k < 1 || k >= n) bad("default_alpha: need 1 <= k < n");
    const std::uint64_t window = 2ull * d + 1;
    if (t < window) bad("default_alpha: need t >= 2d+1");
    const double ideal = std::ceil(static_cast<double>(k) * std::log2(static_cast<double>(n) / k));
    const auto want = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(ideal));
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(want, t / window));
}

// --- ColumnSampler ----------------------------------------------------------

ColumnSampler::ColumnSampler(std::uint32_t t, std::uint32_t d) : t_(t), d_(d), live_count_(t) {
    if (t == 0) bad("ColumnSampler: t must be positive");
    next_.resize(t);
    prev_.resize(t);
    live_.resize(t);
    slot_.resize(t);
    scratch_.reserve(std::min<std::uint64_t>(t, 2ull * d + 1));
    reset();
}

void ColumnSampler::reset() {
    live_count_ = t_;
    picks_ = 0;
    for (std::uint32_t i = 0; i < t_; ++i) {
        next_[i] = (i + 1 == t_) ? 0 : i + 1;
        prev_[i] = (i == 0) ? t_ - 1 : i - 1;
        live_[i] = i;
        slot_[i] = i;
    }
}

void ColumnSampler::remove_row(std::uint32_t row) {
    const std::uint32_t p = prev_[row];
    const std::uint32_t nx = next_[row];
    next_[p] = nx;
    prev_[nx] = p;
    const std::uint32_t s = slot_[row];
    const std::uint32_t last = live_[--live_count_];
    live_[s] = last;
    slot_[last] = s;
}

std::uint32_t ColumnSampler::pick(Rng& rng) {
    if (live_count_ == 0) throw std::logic_error("ColumnSampler: live list is empty");
    return pick_row(live_[rng.below(live_count_)]);
}

std::uint32_t ColumnSampler::pick_row(std::uint32_t row) {
    if (row >= t_ || slot_[row] >= live_count_ || live_[slot_[row]] != row)
        bad("ColumnSampler: row is not live");
    scratch_.clear();
    scratch_.push_back(row);
    if (live_count_ <= 2ull * d_ + 1) {
        // Fewer than 2d live neighbors remain: the pick clears the list.
        for (std::uint32_t s = 0; s < live_count_; ++s)
            if (live_[s] != row) scratch_.push_back(live_[s]);
    } else {
        // The d nearest live entries on each side in list order.  Because the
        // live list is sorted, these include every live row within cyclic
        // index distance d of the pick.
        std::uint32_t cur = row;
        for (std::uint32_t j = 0; j < d_; ++j) {
            cur = next_[cur];
            scratch_.push_back(cur);
        }
        cur = row;
        for (std::uint32_t j = 0; j < d_; ++j) {
            cur = prev_[cur];
            scratch_.push_back(cur);
        }
    }
    for (std::uint32_t r : scratch_) remove_row(r);
    ++picks_;
    return row;
}

std::vector<std::uint32_t> ColumnSampler::live_sorted() const {
    std::vector<std::uint32_t> out(live_.begin(), live_.begin() + live_count_);
    std::sort(out.begin(), out.end());
    return out;
}

// --- runlength-constrained random design ------------------------------------

namespace {

void sample_column(ColumnSampler& sampler, std::uint32_t alpha, Rng& rng,
                   std::vector<std::uint32_t>& out) {
    sampler.reset();
    out.clear();
    for (std::uint32_t i = 0; i < alpha; ++i) out.push_back(sampler.pick(rng));
    std::sort(out.begin(), out.end());
}

}  // namespace

std::vector<std::uint32_t> rand_matrix_column(std::uint32_t t, std::uint32_t d,
                                              std::uint32_t alpha, Rng& rng) {
    if (alpha < 1) bad("rand_matrix_column: alpha must be >= 1");
    if (std::uint64_t{alpha} * (2ull * d + 1) > t)
        bad("rand_matrix_column: alpha exceeds floor(t/(2d+1))");
    ColumnSampler sampler(t, d);
    std::vector<std::uint32_t> rows;
    rows.reserve(alpha);
    for (std::uint32_t i = 0; i < alpha; ++i) rows.push_back(sampler.pick(rng));
    std::sort(rows.begin(), rows.end());
    return rows;
}

TestMatrix rand_matrix(const SchemeParams& params, unsigned threads) {
    params.validate_for_rand_matrix();
    const std::uint32_t d = params.d.value_or(0);
    const std::uint32_t n = params.n;

    std::vector<std::vector<std::uint32_t>> supports(n);
    const auto fill_range = [&](std::uint32_t begin, std::uint32_t end) {
        ColumnSampler sampler(params.t, d);
        for (std::uint32_t j = begin; j < end; ++j) {
            Rng rng(derive_seed(params.seed, j));
            sample_column(sampler, params.alpha, rng, supports[j]);
        }
    };

    if (threads <= 1 || n < 2 * threads) {
        fill_range(0, n);
    } else {
        const unsigned workers = std::min<unsigned>(threads, n);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::uint32_t chunk = (n + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint32_t begin = w * chunk;
            const std::uint32_t end = std::min<std::uint32_t>(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(fill_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    return TestMatrix::from_columns(params.t, supports, d, params.alpha);
}

// --- spacer embedding -------------------------------------------------------

TestMatrix spacer_embed(const TestMatrix& base, std::uint32_t gap) {
    if (gap == 0) return base;
    const std::uint64_t t_out64 = (std::uint64_t{gap} + 1) * base.rows() - gap;
    if (t_out64 > 0xFFFFFFFFull) bad("spacer_embed: output row count overflows");
    const auto t_out = static_cast<std::uint32_t>(t_out64);

    std::vector<std::uint64_t> words(std::size_t{t_out} * base.words_per_row(), 0);
    for (std::uint32_t i = 0; i < base.rows(); ++i) {
        const auto row = base.row_span(i);
        std::copy(row.begin(), row.end(),
                  words.begin() + std::size_t{i} * (gap + 1) * base.words_per_row());
    }

    // Claims: any two 1s in a column now sit at least gap zero rows apart; a
    // base runlength claim only widens further, so keep whichever is larger.
    std::uint32_t run_claim = gap;
    if (base.runlength_claim()) run_claim = std::max(run_claim, *base.runlength_claim());
    return TestMatrix(t_out, base.cols(), std::move(words), run_claim, base.weight_claim());
}

// --- Bernoulli --------------------------------------------------------------

TestMatrix bernoulli_matrix(std::uint32_t t, std::uint32_t n, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) bad("bernoulli_matrix: p must be in [0,1]");
    if (t == 0 || n == 0) bad("bernoulli_matrix: dimensions must be positive");
    std::vector<std::vector<std::uint32_t>> supports(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        Rng rng(derive_seed(seed, j));
        for (std::uint32_t i = 0; i < t; ++i)
            if (rng.bernoulli(p)) supports[j].push_back(i);
    }
    return TestMatrix::from_columns(t, supports);
}

// --- weight-constrained quantitative design ---------------------------------

std::uint32_t qnagt_tests(std::uint32_t n, std::uint32_t k, std::uint32_t w, double delta,
                          double gamma) {
    if (k < 1 || k > n) bad("qnagt_tests: need 1 <= k <= n");
    if (!(delta > 0.0 && delta < 0.5)) bad("qnagt_tests: need 0 < delta < 1/2");
    if (!(gamma > 0.0)) bad("qnagt_tests: need gamma > 0");
    if (w < 2) bad("qnagt_tests: need w >= 2 so log2(w) > 0");
    const double c = 2.0 + 1.0 / delta + gamma;
    const double raw =
        c * k * (1.0 + std::log2(static_cast<double>(n) / k)) / std::log2(static_cast<double>(w));
    const double t = std::ceil(raw);
    if (!(t >= 1.0) || t > 0xFFFFFFFF) bad("qnagt_tests: derived t out of range");
    return static_cast<std::uint32_t>(t);
}

QnagtConstruction qnagt_construct(std::uint32_t n, std::uint32_t k, std::uint32_t w, double delta,
                                  double gamma, std::uint64_t seed, std::uint32_t max_attempts) {
    const std::uint32_t t = qnagt_tests(n, k, w, delta, gamma);
    const double p = static_cast<double>(w) / (2.0 * t);
    if (p > 1.0) bad("qnagt_construct: derived density w/(2t) exceeds 1");
    if (max_attempts < 1) bad("qnagt_construct: need max_attempts >= 1");

    std::uint32_t bad_column = 0;
    for (std::uint32_t attempt = 0; attempt < max_attempts; ++attempt) {
        TestMatrix m = bernoulli_matrix(t, n, p, derive_seed(seed, attempt));
        if (auto v = check_weight(m, w)) {
            bad_column = v->column;
            continue;
        }
        return QnagtConstruction{m.with_claims(std::nullopt, w), t, p, attempt + 1};
    }
    throw InfeasibleError("qnagt_construct: column " + std::to_string(bad_column) +
                          " still exceeds weight " + std::to_string(w) + " after " +
                          std::to_string(max_attempts) +
                          " resampling attempts; parameters are outside the construction's regime");
}

}  // namespace rlgt
