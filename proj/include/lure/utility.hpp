#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lure/corpus.hpp"
#include "lure/generator.hpp"

namespace lure {

enum class UtilityMetric { accuracy, f1 };

UtilityMetric parse_utility_metric(const std::string& name);
const char* utility_metric_name(UtilityMetric m);

struct UtilityRecord {
  std::string query_id;
  std::string doc_id;
  double utility = 0.0;  // in [0, 1]
  int grade = 0;         // round(utility * g_max)
  std::string generator_output;  // retained for audit
};

struct LabelingOptions {
  std::size_t n_retrieve = 10;
  UtilityMetric metric = UtilityMetric::f1;
  int g_max = 4;
  std::string prompt_template =
      "Context: {contexts}\n\nQuestion: {question}\nAnswer:";
  std::size_t max_doc_chars = 1500;
  std::size_t concurrency = 4;  // in-flight generator call cap
};

struct LabelingResult {
  std::vector<UtilityRecord> records;
  std::size_t queries_labeled = 0;
  std::size_t queries_skipped = 0;  // generator failures, logged and counted
};

// For each query: retrieve n docs, condition the generator on each doc alone,
// score the output against the gold answers, and grade the result. Records
// are grouped by query in utility-descending order, ties broken by
// first-stage retrieval rank. Queries whose generator calls fail are skipped.
LabelingResult label_utilities(const GeneratorClient& generator,
                               const std::vector<Query>& queries,
                               const Index& index,
                               const LabelingOptions& options);

// JSON-lines: {"query_id", "doc_id", "utility", "grade", "output"}.
void write_utility_jsonl(const std::string& path,
                         const std::vector<UtilityRecord>& records);
std::vector<UtilityRecord> read_utility_jsonl(const std::string& path);

}  // namespace lure
