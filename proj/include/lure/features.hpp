#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lure/corpus.hpp"
#include "lure/topics.hpp"

namespace lure {

inline constexpr std::size_t kNumFeatures = 14;

// 1-based LETOR indices. f1 query length, f2 distinct query terms,
// f3/f4/f5 min/max/mean query-term idf, f6 doc length, f7 distinct doc
// terms, f8/f9/f10 min/max/mean doc-term idf, f11 distinct term overlap,
// f12 bm25, f13 topic cosine, f14 top-topic coverage.
extern const std::array<const char*, kNumFeatures> kFeatureNames;

struct FeatureVector {
  std::array<double, kNumFeatures> values{};

  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
};

struct FeatureParams {
  std::size_t top_a = 20;             // topics counted as "top" for f14
  std::size_t fold_in_iterations = 50;
  std::uint64_t seed = 42;            // mixed into the per-pair fold-in seed
};

// Pure function of (index, model, query, doc, params): topic fold-in seeds
// are derived by hashing (query_id, doc_id), so repeated calls are bitwise
// identical and independent of call order.
FeatureVector extract_features(const Index& index, const TopicModel& model,
                               const Query& q, std::string_view doc_id,
                               const FeatureParams& params);

std::vector<std::pair<std::string, FeatureVector>> batch_extract(
    const Index& index, const TopicModel& model, const Query& q,
    const std::vector<std::string>& doc_ids, const FeatureParams& params);

// Plain-text ranking-file row: "<label> qid:<id> 1:v ... 14:v #<doc_id>".
struct FeatureFileRow {
  int label = 0;
  std::string query_id;
  FeatureVector features;
  std::string doc_id;
};

void write_feature_file(const std::string& path,
                        const std::vector<FeatureFileRow>& rows);
std::vector<FeatureFileRow> read_feature_file(const std::string& path);

}  // namespace lure
