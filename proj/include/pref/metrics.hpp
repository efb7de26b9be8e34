#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pref/types.hpp"

namespace pref {

/// Judge scores for a set of instances, aligned to candidate order per row.
struct ScoreRow {
    std::string instance_id;
    std::size_t gold_index = 0;
    std::vector<double> scores;
};

struct ScoreMatrix {
    std::vector<ScoreRow> rows;
};

/// Fraction of rows whose gold score strictly exceeds every distractor score.
/// Ties count as incorrect.
double accuracy(const ScoreMatrix& m);

/// Mean squared deviation from the 10/0 targets (gold mapped to 10,
/// distractors to 0), over all scores concatenated across rows.
double mse(const ScoreMatrix& m);

/// Per-row nDCG with binary gain (10 at the gold answer, 0 elsewhere),
/// log2(rank+1) discount, ties broken by candidate order; macro-averaged.
double ndcg(const ScoreMatrix& m);

/// Variant that ranks all answers of all rows in one global list. The
/// per-question form above is the default reading; this one is kept behind
/// its own entry point for comparison runs.
double ndcg_global(const ScoreMatrix& m);

/// A ranking of factor ids, best first.
struct RankVector {
    std::vector<std::string> factor_ids;
};

/// Kendall tau-a over all id pairs. Inputs must be permutations of the same
/// id set with length >= 2.
double kendall_tau(const RankVector& a, const RankVector& b);

/// Spearman rho = 1 - 6*sum(d^2)/(n(n^2-1)) over per-id rank differences.
double spearman_rho(const RankVector& a, const RankVector& b);

/// Sample Pearson correlation. Requires equal lengths >= 2 and nonzero
/// variance on both sides.
double pearson_r(const std::vector<double>& x, const std::vector<double>& y);

struct RankCorrelationDetail {
    std::size_t pair_index = 0;
    double pearson = 0.0;
    double spearman = 0.0;
    double kendall = 0.0;
};

struct RankCorrelationReport {
    double pearson = 0.0;
    double spearman = 0.0;
    double kendall = 0.0;
    std::size_t n_pairs = 0;     // pairs that contributed
    std::size_t n_excluded = 0;  // pairs dropped for id mismatch / too short
    std::vector<RankCorrelationDetail> detail;
};

/// Per-pair coefficients on rank-position vectors aligned by factor id
/// (Pearson is applied to the integer rank vectors), macro-averaged.
/// Pairs failing the id-set precondition are excluded and counted.
RankCorrelationReport rank_correlation_report(
    const std::vector<std::pair<RankVector, RankVector>>& pairs);

struct AugmentationStats {
    std::size_t n_general = 0;
    std::size_t n_added = 0;
    double added_ratio = 0.0;
    double per_question_general = 0.0;
    double per_question_added = 0.0;
    double exclusion_rate_general = 0.0;
    double exclusion_rate_added = 0.0;
};

/// Counts coverage vs augmented factors over all guidelines and the fraction
/// of each class whose name or description contains any of the keywords
/// (case-insensitive substring). Rates over an empty class are 0.
AugmentationStats augmentation_stats(const std::vector<PersonalizedGuideline>& guidelines,
                                     const std::vector<std::string>& keywords = {"dislike",
                                                                                 "avoid"});

}  // namespace pref
