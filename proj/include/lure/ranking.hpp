#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lure/features.hpp"

namespace lure {

struct RankedRow {
  std::string doc_id;
  FeatureVector features;
  int grade = 0;         // integer relevance in [0, g_max]
  double utility = 0.0;  // continuous utility in [0, 1]
};

// Rows are kept in first-stage retrieval order; that order breaks utility
// ties wherever a strict ranking is required.
struct QueryGroup {
  std::string query_id;
  std::vector<RankedRow> rows;
};

struct RankingDataset {
  std::vector<QueryGroup> groups;
  int g_max = 4;
};

// Builds a dataset from a feature file (labels as grades; utility taken as
// the grade). Groups appear in first-occurrence order of their query ids.
RankingDataset dataset_from_feature_rows(const std::vector<FeatureFileRow>& rows,
                                         int g_max);

// DCG with gain 2^g - 1 and discount 1/log2(rank + 1), truncated at cutoff.
double dcg(const std::vector<int>& grades_in_rank_order, std::size_t cutoff);

// DCG normalized by the ideal (grades sorted descending); 1 when the ideal
// DCG is 0 (all-zero grades).
double ndcg(const std::vector<int>& grades_in_rank_order, std::size_t cutoff);

// |NDCG after swapping the documents at 0-based positions pos_i and pos_j
// minus NDCG before|, in closed form; positions beyond cutoff contribute
// nothing. grades are listed in current rank order.
double delta_ndcg(const std::vector<int>& grades_in_rank_order,
                  std::size_t pos_i, std::size_t pos_j, std::size_t cutoff);

struct LambdaOptions {
  double sigma = 1.0;
  std::size_t cutoff = 5;
  // Eq-style pair gradient carries sigma both inside the sigmoid and as an
  // outer factor; turning this off drops the outer factor.
  bool sigma_outer = true;
};

struct LambdaResult {
  std::vector<double> lambdas;   // positive pushes a score up
  std::vector<double> hessians;  // second-order pair terms, nonnegative
};

// Pair gradients for one query group given current scores. For every pair
// with grade_i > grade_j the higher-graded row accumulates
// +sigma * rho * dNDCG and the lower-graded row the negative, where
// rho = 1/(1 + e^{sigma (s_i - s_j)}). Ranks for dNDCG come from sorting
// scores descending, ties broken by retrieval order.
LambdaResult lambda_pairs(const QueryGroup& group,
                          const std::vector<double>& scores,
                          const LambdaOptions& options);

// Mean NDCG@cutoff over groups under the given per-row scores.
double mean_ndcg(const RankingDataset& data,
                 const std::vector<std::vector<double>>& scores,
                 std::size_t cutoff);

}  // namespace lure
