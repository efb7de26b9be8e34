#include "pref/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "pref/errors.hpp"

namespace pref {

namespace {

void require_rows(const ScoreMatrix& m) {
    if (m.rows.empty()) throw EmptyInput("score matrix is empty");
    for (const auto& row : m.rows) {
        if (row.scores.empty()) throw EmptyInput("score row is empty: " + row.instance_id);
        if (row.gold_index >= row.scores.size()) {
            throw MetricError("gold_index out of range in row " + row.instance_id);
        }
    }
}

// Candidate indices ranked by descending score, ties keeping candidate order.
std::vector<std::size_t> ranked_indices(const std::vector<double>& scores) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    return order;
}

std::unordered_map<std::string, std::size_t> rank_positions(const RankVector& v) {
    std::unordered_map<std::string, std::size_t> pos;
    pos.reserve(v.factor_ids.size());
    for (std::size_t i = 0; i < v.factor_ids.size(); ++i) {
        if (!pos.emplace(v.factor_ids[i], i).second) {
            throw IdMismatch("duplicate id in rank vector: " + v.factor_ids[i]);
        }
    }
    return pos;
}

void require_same_ids(const RankVector& a, const RankVector& b,
                      const std::unordered_map<std::string, std::size_t>& pos_b) {
    if (a.factor_ids.size() != b.factor_ids.size()) {
        throw IdMismatch("rank vectors differ in length");
    }
    for (const auto& id : a.factor_ids) {
        if (pos_b.find(id) == pos_b.end()) {
            throw IdMismatch("id missing from second rank vector: " + id);
        }
    }
}

bool contains_keyword_ci(const std::string& haystack, const std::vector<std::string>& keywords) {
    std::string lower(haystack.size(), '\0');
    std::transform(haystack.begin(), haystack.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& kw : keywords) {
        std::string kw_lower(kw.size(), '\0');
        std::transform(kw.begin(), kw.end(), kw_lower.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (!kw_lower.empty() && lower.find(kw_lower) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

double accuracy(const ScoreMatrix& m) {
    require_rows(m);
    std::size_t correct = 0;
    for (const auto& row : m.rows) {
        const double gold = row.scores[row.gold_index];
        bool strictly_best = true;
        for (std::size_t i = 0; i < row.scores.size(); ++i) {
            if (i == row.gold_index) continue;
            if (row.scores[i] >= gold) {
                strictly_best = false;
                break;
            }
        }
        if (strictly_best) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(m.rows.size());
}

double mse(const ScoreMatrix& m) {
    require_rows(m);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& row : m.rows) {
        for (std::size_t i = 0; i < row.scores.size(); ++i) {
            const double target = (i == row.gold_index) ? 10.0 : 0.0;
            const double d = row.scores[i] - target;
            sum += d * d;
            ++n;
        }
    }
    return sum / static_cast<double>(n);
}

double ndcg(const ScoreMatrix& m) {
    require_rows(m);
    double total = 0.0;
    for (const auto& row : m.rows) {
        const auto order = ranked_indices(row.scores);
        double dcg = 0.0;
        for (std::size_t rank = 1; rank <= order.size(); ++rank) {
            const double rel = (order[rank - 1] == row.gold_index) ? 10.0 : 0.0;
            dcg += rel / std::log2(static_cast<double>(rank) + 1.0);
        }
        // Ideal ranking puts the single relevant answer first: IDCG = 10.
        total += dcg / 10.0;
    }
    return total / static_cast<double>(m.rows.size());
}

double ndcg_global(const ScoreMatrix& m) {
    require_rows(m);
    struct Entry {
        double score;
        bool gold;
    };
    std::vector<Entry> entries;
    for (const auto& row : m.rows) {
        for (std::size_t i = 0; i < row.scores.size(); ++i) {
            entries.push_back({row.scores[i], i == row.gold_index});
        }
    }
    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return entries[a].score > entries[b].score;
    });

    double dcg = 0.0;
    std::size_t n_gold = 0;
    for (std::size_t rank = 1; rank <= order.size(); ++rank) {
        if (entries[order[rank - 1]].gold) {
            dcg += 10.0 / std::log2(static_cast<double>(rank) + 1.0);
        }
    }
    for (const auto& e : entries) n_gold += e.gold ? 1 : 0;

    double idcg = 0.0;
    for (std::size_t rank = 1; rank <= n_gold; ++rank) {
        idcg += 10.0 / std::log2(static_cast<double>(rank) + 1.0);
    }
    return idcg > 0.0 ? dcg / idcg : 0.0;
}

double kendall_tau(const RankVector& a, const RankVector& b) {
    (void)rank_positions(a);  // rejects duplicate ids in a
    const auto pos_b = rank_positions(b);
    require_same_ids(a, b, pos_b);
    const std::size_t n = a.factor_ids.size();
    if (n < 2) throw TooShort();

    long long concordant = 0;
    long long discordant = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& id_i = a.factor_ids[i];
            const auto& id_j = a.factor_ids[j];
            // In a, id_i precedes id_j by construction.
            const bool same_order_in_b = pos_b.at(id_i) < pos_b.at(id_j);
            if (same_order_in_b) {
                ++concordant;
            } else {
                ++discordant;
            }
        }
    }
    const double n_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(concordant - discordant) / n_pairs;
}

double spearman_rho(const RankVector& a, const RankVector& b) {
    const auto pos_a = rank_positions(a);
    const auto pos_b = rank_positions(b);
    require_same_ids(a, b, pos_b);
    const std::size_t n = a.factor_ids.size();
    if (n < 2) throw TooShort();

    double sum_d2 = 0.0;
    for (const auto& [id, ra] : pos_a) {
        const double d =
            static_cast<double>(ra) - static_cast<double>(pos_b.at(id));
        sum_d2 += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * sum_d2 / (nn * (nn * nn - 1.0));
}

double pearson_r(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw LengthMismatch();
    const std::size_t n = x.size();
    if (n < 2) throw TooShort("pearson needs at least 2 samples");

    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);

    double cov = 0.0;
    double var_x = 0.0;
    double var_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        cov += dx * dy;
        var_x += dx * dx;
        var_y += dy * dy;
    }
    if (var_x == 0.0 || var_y == 0.0) throw ZeroVariance();
    return cov / std::sqrt(var_x * var_y);
}

RankCorrelationReport rank_correlation_report(
    const std::vector<std::pair<RankVector, RankVector>>& pairs) {
    if (pairs.empty()) throw EmptyInput("no rank vector pairs");

    RankCorrelationReport report;
    double sum_p = 0.0;
    double sum_s = 0.0;
    double sum_k = 0.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [a, b] = pairs[i];
        try {
            // Integer rank vectors aligned by a's id order: x = 1..n, y = 1-based
            // position of the same id in b.
            const auto pos_b = rank_positions(b);
            require_same_ids(a, b, pos_b);
            if (a.factor_ids.size() < 2) throw TooShort();

            std::vector<double> x;
            std::vector<double> y;
            x.reserve(a.factor_ids.size());
            y.reserve(a.factor_ids.size());
            for (std::size_t k = 0; k < a.factor_ids.size(); ++k) {
                x.push_back(static_cast<double>(k + 1));
                y.push_back(static_cast<double>(pos_b.at(a.factor_ids[k]) + 1));
            }
            RankCorrelationDetail d;
            d.pair_index = i;
            d.pearson = pearson_r(x, y);
            d.spearman = spearman_rho(a, b);
            d.kendall = kendall_tau(a, b);
            report.detail.push_back(d);
            sum_p += d.pearson;
            sum_s += d.spearman;
            sum_k += d.kendall;
        } catch (const MetricError&) {
            ++report.n_excluded;
        }
    }
    report.n_pairs = report.detail.size();
    if (report.n_pairs > 0) {
        report.pearson = sum_p / static_cast<double>(report.n_pairs);
        report.spearman = sum_s / static_cast<double>(report.n_pairs);
        report.kendall = sum_k / static_cast<double>(report.n_pairs);
    }
    return report;
}

AugmentationStats augmentation_stats(const std::vector<PersonalizedGuideline>& guidelines,
                                     const std::vector<std::string>& keywords) {
    if (guidelines.empty()) throw EmptyInput("no guidelines");

    AugmentationStats stats;
    std::size_t general_hits = 0;
    std::size_t added_hits = 0;
    for (const auto& g : guidelines) {
        stats.n_general += g.base.factors.size();
        stats.n_added += g.added.size();
        for (const auto& f : g.base.factors) {
            if (contains_keyword_ci(f.name, keywords) ||
                contains_keyword_ci(f.description, keywords)) {
                ++general_hits;
            }
        }
        for (const auto& f : g.added) {
            if (contains_keyword_ci(f.name, keywords) ||
                contains_keyword_ci(f.description, keywords)) {
                ++added_hits;
            }
        }
    }
    const double n_questions = static_cast<double>(guidelines.size());
    stats.added_ratio = stats.n_general > 0
                            ? static_cast<double>(stats.n_added) / static_cast<double>(stats.n_general)
                            : 0.0;
    stats.per_question_general = static_cast<double>(stats.n_general) / n_questions;
    stats.per_question_added = static_cast<double>(stats.n_added) / n_questions;
    stats.exclusion_rate_general =
        stats.n_general > 0 ? static_cast<double>(general_hits) / static_cast<double>(stats.n_general)
                            : 0.0;
    stats.exclusion_rate_added =
        stats.n_added > 0 ? static_cast<double>(added_hits) / static_cast<double>(stats.n_added)
                          : 0.0;
    return stats;
}

}  // namespace pref
