#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "pref/errors.hpp"
#include "pref/metrics.hpp"

using namespace pref;

// ---------------------------------------------------------------------------
// Independent brute-force oracles. Written against the definitions alone, on
// purpose as naively as possible; the production code must agree with these.
// ---------------------------------------------------------------------------
namespace oracle {

double accuracy(const ScoreMatrix& m) {
    std::size_t correct = 0;
    for (const auto& row : m.rows) {
        bool strictly_top = true;
        for (std::size_t i = 0; i < row.scores.size(); ++i) {
            if (i == row.gold_index) continue;
            if (!(row.scores[row.gold_index] > row.scores[i])) strictly_top = false;
        }
        if (strictly_top) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(m.rows.size());
}

double mse(const ScoreMatrix& m) {
    double sum = 0.0;
    std::size_t count = 0;
    for (const auto& row : m.rows) {
        for (std::size_t i = 0; i < row.scores.size(); ++i) {
            const double target = (i == row.gold_index) ? 10.0 : 0.0;
            sum += (row.scores[i] - target) * (row.scores[i] - target);
            ++count;
        }
    }
    return sum / static_cast<double>(count);
}

// Rank positions with ties broken by candidate order, computed by sorting an
// index list; the gold answer contributes gain 10 at its 1-based rank.
double ndcg(const ScoreMatrix& m) {
    double total = 0.0;
    for (const auto& row : m.rows) {
        std::vector<std::size_t> order(row.scores.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return row.scores[a] > row.scores[b];
        });
        double dcg = 0.0;
        for (std::size_t rank = 1; rank <= order.size(); ++rank) {
            if (order[rank - 1] == row.gold_index) {
                dcg = 10.0 / std::log2(static_cast<double>(rank) + 1.0);
            }
        }
        const double idcg = 10.0 / std::log2(2.0);
        total += dcg / idcg;
    }
    return total / static_cast<double>(m.rows.size());
}

double kendall(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    auto position = [](const std::vector<std::string>& v, const std::string& id) {
        return static_cast<long>(std::find(v.begin(), v.end(), id) - v.begin());
    };
    const long n = static_cast<long>(a.size());
    long concordant = 0;
    long discordant = 0;
    for (long i = 0; i < n; ++i) {
        for (long j = i + 1; j < n; ++j) {
            const long da = position(a, a[i]) - position(a, a[j]);
            const long db = position(b, a[i]) - position(b, a[j]);
            if (da * db > 0) ++concordant;
            else ++discordant;
        }
    }
    return static_cast<double>(concordant - discordant) /
           (static_cast<double>(n) * (n - 1) / 2.0);
}

double spearman(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    auto position = [](const std::vector<std::string>& v, const std::string& id) {
        return static_cast<double>(std::find(v.begin(), v.end(), id) - v.begin());
    };
    const double n = static_cast<double>(a.size());
    double d2 = 0.0;
    for (const auto& id : a) {
        const double d = position(a, id) - position(b, id);
        d2 += d * d;
    }
    return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracle

namespace {

ScoreMatrix matrix_of(std::vector<std::pair<std::size_t, std::vector<double>>> rows) {
    ScoreMatrix m;
    std::size_t i = 0;
    for (auto& [gold, scores] : rows) {
        m.rows.push_back({"q" + std::to_string(++i), gold, std::move(scores)});
    }
    return m;
}

std::vector<std::string> ids_upto(std::size_t n) {
    std::vector<std::string> ids;
    for (std::size_t i = 1; i <= n; ++i) ids.push_back("F" + std::to_string(i));
    return ids;
}

ScoreMatrix fuzz_matrix(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> n_rows(1, 8);
    std::uniform_int_distribution<std::size_t> n_cands(2, 6);
    std::uniform_real_distribution<double> score(0.0, 10.0);
    std::uniform_int_distribution<int> decimal(0, 100);

    ScoreMatrix m;
    const std::size_t rows = n_rows(rng);
    for (std::size_t r = 0; r < rows; ++r) {
        ScoreRow row;
        row.instance_id = "q" + std::to_string(r);
        const std::size_t n = n_cands(rng);
        row.gold_index = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
        for (std::size_t c = 0; c < n; ++c) {
            // Mix continuous scores with one-decimal ones so ties occur.
            row.scores.push_back(rng() % 2 == 0 ? score(rng) : decimal(rng) / 10.0);
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hand-computed fixtures (frozen before implementation).
// ---------------------------------------------------------------------------

TEST_CASE("mse hand fixtures") {
    // scores [8,2,0,0], gold first: ((8-10)^2 + 4 + 0 + 0) / 4 = 2.0
    CHECK(mse(matrix_of({{0, {8, 2, 0, 0}}})) == doctest::Approx(2.0).epsilon(1e-12));
    // scores [10,3,1,0], gold first: (0 + 9 + 1 + 0) / 4 = 2.5
    CHECK(mse(matrix_of({{0, {10, 3, 1, 0}}})) == doctest::Approx(2.5).epsilon(1e-12));
    // perfect scores: 0.0
    CHECK(mse(matrix_of({{1, {0, 10, 0, 0}}})) == doctest::Approx(0.0));
    // worst case single candidate pair: [0,10] gold first -> (100+100)/2 = 100... bounded by 100
    CHECK(mse(matrix_of({{0, {0, 10}}})) == doctest::Approx(100.0));
}

TEST_CASE("ndcg hand fixtures") {
    // gold at rank 1: 1.0
    CHECK(ndcg(matrix_of({{0, {9, 3, 2, 1}}})) == doctest::Approx(1.0));
    // gold at rank 2 of 4: (10/log2(3)) / 10 = 0.6309297536
    CHECK(ndcg(matrix_of({{1, {9, 7, 2, 1}}})) == doctest::Approx(0.63093).epsilon(1e-5));
    // gold at rank 4 of 4: 1/log2(5) = 0.4306765581
    CHECK(ndcg(matrix_of({{3, {9, 7, 2, 1}}})) == doctest::Approx(0.43068).epsilon(1e-5));
    // tie with gold: candidate order breaks ties, gold at index 0 stays rank 1
    CHECK(ndcg(matrix_of({{0, {5, 5, 1, 0}}})) == doctest::Approx(1.0));
    // same tie but gold second: gold falls to rank 2
    CHECK(ndcg(matrix_of({{1, {5, 5, 1, 0}}})) == doctest::Approx(0.6309297536).epsilon(1e-9));
}

TEST_CASE("accuracy hand fixtures and tie rule") {
    CHECK(accuracy(matrix_of({{0, {10, 3, 1, 0}}})) == doctest::Approx(1.0));
    // gold tied with a distractor counts as incorrect
    CHECK(accuracy(matrix_of({{0, {10, 10, 1, 0}}})) == doctest::Approx(0.0));
    CHECK(accuracy(matrix_of({{2, {1, 2, 9, 0}}, {0, {4, 6, 1, 2}}})) == doctest::Approx(0.5));
}

TEST_CASE("rank correlation hand fixtures") {
    const RankVector a{{"F1", "F2", "F3", "F4"}};
    const RankVector b{{"F1", "F3", "F2", "F4"}};
    // one discordant pair of six: (5 - 1) / 6 = 2/3
    CHECK(kendall_tau(a, b) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // d^2 = 0 + 1 + 1 + 0 -> 1 - 12/60 = 0.8
    CHECK(spearman_rho(a, b) == doctest::Approx(0.8).epsilon(1e-12));

    const RankVector reversed{{"F4", "F3", "F2", "F1"}};
    CHECK(kendall_tau(a, reversed) == doctest::Approx(-1.0));
    CHECK(spearman_rho(a, reversed) == doctest::Approx(-1.0));
    CHECK(kendall_tau(a, a) == doctest::Approx(1.0));
    CHECK(spearman_rho(a, a) == doctest::Approx(1.0));
}

TEST_CASE("pearson hand fixtures") {
    CHECK(pearson_r({1, 2, 3}, {1, 3, 2}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pearson_r({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
    CHECK(pearson_r({1, 2, 3}, {3, 2, 1}) == doctest::Approx(-1.0));
}

// ---------------------------------------------------------------------------
// Error contracts.
// ---------------------------------------------------------------------------

TEST_CASE("metric preconditions") {
    CHECK_THROWS_AS(accuracy(ScoreMatrix{}), EmptyInput);
    CHECK_THROWS_AS(mse(ScoreMatrix{}), EmptyInput);
    CHECK_THROWS_AS(ndcg(ScoreMatrix{}), EmptyInput);

    CHECK_THROWS_AS(kendall_tau(RankVector{{"F1"}}, RankVector{{"F1"}}), TooShort);
    CHECK_THROWS_AS(kendall_tau(RankVector{{"F1", "F2"}}, RankVector{{"F1", "F3"}}), IdMismatch);
    CHECK_THROWS_AS(kendall_tau(RankVector{{"F1", "F1"}}, RankVector{{"F1", "F1"}}), IdMismatch);
    CHECK_THROWS_AS(spearman_rho(RankVector{{"F1", "F2"}}, RankVector{{"F1"}}), IdMismatch);

    CHECK_THROWS_AS(pearson_r({1, 2}, {1}), LengthMismatch);
    CHECK_THROWS_AS(pearson_r({1}, {1}), TooShort);
    CHECK_THROWS_AS(pearson_r({2, 2, 2}, {1, 2, 3}), ZeroVariance);
}

// ---------------------------------------------------------------------------
// Oracle equivalence and properties on fuzzed inputs.
// ---------------------------------------------------------------------------

TEST_CASE("score metrics match the brute-force oracle on 1000 fuzzed matrices") {
    std::mt19937_64 rng(20260814);
    for (int trial = 0; trial < 1000; ++trial) {
        const ScoreMatrix m = fuzz_matrix(rng);
        CAPTURE(trial);
        CHECK(std::abs(accuracy(m) - oracle::accuracy(m)) <= 1e-9);
        CHECK(std::abs(mse(m) - oracle::mse(m)) <= 1e-9);
        CHECK(std::abs(ndcg(m) - oracle::ndcg(m)) <= 1e-9);

        // Range properties.
        CHECK(accuracy(m) >= 0.0);
        CHECK(accuracy(m) <= 1.0);
        CHECK(mse(m) >= 0.0);
        CHECK(ndcg(m) > 0.0);
        CHECK(ndcg(m) <= 1.0 + 1e-12);
    }
}

TEST_CASE("rank correlations match the oracle on fuzzed permutations") {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        std::vector<std::string> a = ids_upto(n);
        std::vector<std::string> b = a;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);

        const RankVector ra{a}, rb{b};
        CAPTURE(trial);
        CHECK(std::abs(kendall_tau(ra, rb) - oracle::kendall(a, b)) <= 1e-9);
        CHECK(std::abs(spearman_rho(ra, rb) - oracle::spearman(a, b)) <= 1e-9);

        // Symmetry and bounds.
        CHECK(kendall_tau(ra, rb) == doctest::Approx(kendall_tau(rb, ra)).epsilon(1e-12));
        CHECK(spearman_rho(ra, rb) == doctest::Approx(spearman_rho(rb, ra)).epsilon(1e-12));
        CHECK(kendall_tau(ra, rb) >= -1.0 - 1e-12);
        CHECK(kendall_tau(ra, rb) <= 1.0 + 1e-12);
        CHECK(spearman_rho(ra, rb) >= -1.0 - 1e-12);
        CHECK(spearman_rho(ra, rb) <= 1.0 + 1e-12);
    }
}

TEST_CASE("pearson on rank-position vectors equals spearman (tie-free)") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 2 + rng() % 9;
        std::vector<std::string> a = ids_upto(n);
        std::vector<std::string> b = a;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);

        // 1-based rank of each id, aligned by id.
        std::vector<double> ranks_a(n), ranks_b(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string id = "F" + std::to_string(i + 1);
            ranks_a[i] = 1.0 + (std::find(a.begin(), a.end(), id) - a.begin());
            ranks_b[i] = 1.0 + (std::find(b.begin(), b.end(), id) - b.begin());
        }
        CAPTURE(trial);
        CHECK(std::abs(pearson_r(ranks_a, ranks_b) - spearman_rho(RankVector{a}, RankVector{b})) <=
              1e-12);
    }
}

TEST_CASE("pearson matches the naive oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng() % 30;
        std::vector<double> x(n), y(n);
        for (auto& v : x) v = value(rng);
        for (auto& v : y) v = value(rng);
        // Skip near-degenerate draws (oracle divides by ~0 too).
        const double vx = *std::max_element(x.begin(), x.end()) -
                          *std::min_element(x.begin(), x.end());
        const double vy = *std::max_element(y.begin(), y.end()) -
                          *std::min_element(y.begin(), y.end());
        if (vx < 1e-6 || vy < 1e-6) continue;
        CHECK(std::abs(pearson_r(x, y) - oracle::pearson(x, y)) <= 1e-9);
    }
}

TEST_CASE("ndcg is monotone in the gold rank") {
    // Pushing the gold answer down one rank can only lower per-question nDCG.
    double previous = 2.0;
    for (std::size_t gold = 0; gold < 5; ++gold) {
        const double value = ndcg(matrix_of({{gold, {9, 8, 7, 6, 5}}}));
        CHECK(value < previous);
        previous = value;
    }
}

TEST_CASE("ndcg_global agrees with per-question form on single-row matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        ScoreMatrix m = fuzz_matrix(rng);
        m.rows.resize(1);
        CHECK(ndcg_global(m) == doctest::Approx(ndcg(m)).epsilon(1e-12));
    }
}

// ---------------------------------------------------------------------------
// Aggregated correlation report.
// ---------------------------------------------------------------------------

TEST_CASE("rank_correlation_report aggregates and excludes") {
    const RankVector a{{"F1", "F2", "F3", "F4"}};
    const RankVector shuffled{{"F1", "F3", "F2", "F4"}};
    const RankVector reversed{{"F4", "F3", "F2", "F1"}};

    SUBCASE("identical orderings give perfect correlation") {
        const auto report = rank_correlation_report({{a, a}, {shuffled, shuffled}});
        CHECK(report.pearson == doctest::Approx(1.0));
        CHECK(report.spearman == doctest::Approx(1.0));
        CHECK(report.kendall == doctest::Approx(1.0));
        CHECK(report.n_pairs == 2);
        CHECK(report.n_excluded == 0);
    }

    SUBCASE("reversed orderings give -1") {
        const auto report = rank_correlation_report({{a, reversed}});
        CHECK(report.kendall == doctest::Approx(-1.0));
        CHECK(report.spearman == doctest::Approx(-1.0));
        CHECK(report.pearson == doctest::Approx(-1.0));
    }

    SUBCASE("macro-average over mixed pairs") {
        const auto report = rank_correlation_report({{a, a}, {a, shuffled}});
        CHECK(report.kendall == doctest::Approx((1.0 + 2.0 / 3.0) / 2.0).epsilon(1e-12));
        CHECK(report.spearman == doctest::Approx((1.0 + 0.8) / 2.0).epsilon(1e-12));
        CHECK(report.detail.size() == 2);
    }

    SUBCASE("invalid pairs are excluded and counted") {
        const RankVector other{{"G1", "G2", "G3", "G4"}};
        const auto report = rank_correlation_report({{a, a}, {a, other}});
        CHECK(report.n_pairs == 1);
        CHECK(report.n_excluded == 1);
        CHECK(report.kendall == doctest::Approx(1.0));
    }

    SUBCASE("no valid pairs") {
        CHECK_THROWS_AS(rank_correlation_report({}), EmptyInput);
    }
}

// ---------------------------------------------------------------------------
// Augmentation statistics.
// ---------------------------------------------------------------------------

namespace {

PersonalizedGuideline synthetic_guideline(std::size_t n_general, std::size_t n_added,
                                          const std::string& tag) {
    PersonalizedGuideline g;
    g.base.query_id = tag;
    for (std::size_t i = 1; i <= n_general; ++i) {
        Factor f;
        f.id = "F" + std::to_string(i);
        f.name = "general factor " + std::to_string(i);
        f.description = "checks aspect " + std::to_string(i);
        f.origin = FactorOrigin::Coverage;
        g.base.factors.push_back(std::move(f));
        g.ordering.push_back("F" + std::to_string(i));
    }
    for (std::size_t i = 1; i <= n_added; ++i) {
        Factor f;
        f.id = "A" + std::to_string(i);
        f.name = "added factor " + std::to_string(i);
        f.description = "user-specific criterion";
        f.origin = FactorOrigin::Augmented;
        f.justification = "requested by profile";
        g.added.push_back(std::move(f));
        g.ordering.push_back("A" + std::to_string(i));
    }
    return g;
}

}  // namespace

TEST_CASE("augmentation statistics reproduce the published factor counts") {
    // 200 guidelines carrying 1986 general and 153 added factors in total:
    // the first 186 guidelines get 10 general factors, the rest 9; the first
    // 153 guidelines get one added factor each.
    std::vector<PersonalizedGuideline> guidelines;
    std::size_t general_total = 0, added_total = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        const std::size_t n_general = i < 186 ? 10 : 9;
        const std::size_t n_added = i < 153 ? 1 : 0;
        general_total += n_general;
        added_total += n_added;
        guidelines.push_back(synthetic_guideline(n_general, n_added, "q" + std::to_string(i)));
    }
    REQUIRE(general_total == 1986);
    REQUIRE(added_total == 153);

    const AugmentationStats stats = augmentation_stats(guidelines);
    CHECK(stats.n_general == 1986);
    CHECK(stats.n_added == 153);
    CHECK(stats.added_ratio == doctest::Approx(0.0770).epsilon(0.0015));
    CHECK(std::abs(stats.added_ratio - 0.0770) <= 0.0001);
    CHECK(stats.per_question_general == doctest::Approx(9.93).epsilon(1e-9));
    CHECK(stats.per_question_added == doctest::Approx(0.765).epsilon(1e-9));
}

TEST_CASE("keyword rates are case-insensitive substring matches") {
    auto g = synthetic_guideline(4, 2, "q1");
    g.base.factors[0].name = "Avoids jargon";            // "avoid" matches
    g.base.factors[1].description = "notes DISLIKED styles";  // "dislike" matches
    g.added[0].description = "user dislikes long intros";

    const AugmentationStats stats = augmentation_stats({g});
    CHECK(stats.exclusion_rate_general == doctest::Approx(2.0 / 4.0));
    CHECK(stats.exclusion_rate_added == doctest::Approx(1.0 / 2.0));
}

TEST_CASE("augmentation stats over an empty set is an error") {
    CHECK_THROWS_AS(augmentation_stats({}), EmptyInput);
}
