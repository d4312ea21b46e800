#include "lure/utility.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include <json.hpp>

#include "lure/answer_metrics.hpp"
#include "lure/common.hpp"
#include "lure/prompt.hpp"

namespace lure {

UtilityMetric parse_utility_metric(const std::string& name) {
  if (name == "accuracy") return UtilityMetric::accuracy;
  if (name == "f1") return UtilityMetric::f1;
  fail(ErrorCode::invalid_argument,
       "unknown utility metric: " + name + " (expected accuracy or f1)");
}

const char* utility_metric_name(UtilityMetric m) {
  return m == UtilityMetric::accuracy ? "accuracy" : "f1";
}

namespace {

double score_output(UtilityMetric metric, const std::string& output,
                    const std::vector<std::string>& golds) {
  return metric == UtilityMetric::accuracy ? accuracy(output, golds)
                                           : f1_score(output, golds);
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Outputs are indexed
// by i, so assembly order never depends on completion order.
void parallel_for(std::size_t n, std::size_t workers,
                  const std::function<void(std::size_t)>& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

LabelingResult label_utilities(const GeneratorClient& generator,
                               const std::vector<Query>& queries,
                               const Index& index,
                               const LabelingOptions& options) {
  if (options.n_retrieve < 1) {
    fail(ErrorCode::invalid_argument, "n_retrieve must be >= 1");
  }
  for (const Query& q : queries) {
    if (q.gold_answers.empty()) {
      fail(ErrorCode::invalid_argument,
           "query has no gold answers: " + q.query_id);
    }
  }

  struct Task {
    std::size_t query_idx;
    std::size_t rank;  // first-stage retrieval rank, 0-based
    std::string doc_id;
    std::string output;
    double utility = 0.0;
    bool failed = false;
    std::string error;
  };

  std::vector<Task> tasks;
  std::vector<std::size_t> docs_per_query(queries.size(), 0);
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const auto hits = index.retrieve(queries[qi], options.n_retrieve);
    docs_per_query[qi] = hits.size();
    for (std::size_t r = 0; r < hits.size(); ++r) {
      tasks.push_back({qi, r, hits[r].doc_id, "", 0.0, false, ""});
    }
  }

  parallel_for(tasks.size(), options.concurrency, [&](std::size_t i) {
    Task& task = tasks[i];
    const Query& q = queries[task.query_idx];
    const std::vector<const Document*> context{&index.doc(task.doc_id)};
    const std::string prompt = build_prompt(
        q, context, options.prompt_template, options.max_doc_chars);
    try {
      task.output = generator.generate(prompt);
      task.utility = score_output(options.metric, task.output, q.gold_answers);
    } catch (const Error& e) {
      task.failed = true;
      task.error = e.what();
    }
  });

  LabelingResult result;
  std::size_t cursor = 0;
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const std::size_t count = docs_per_query[qi];
    const std::size_t begin = cursor;
    cursor += count;
    if (count == 0) continue;

    bool skipped = false;
    for (std::size_t i = begin; i < begin + count; ++i) {
      if (tasks[i].failed) {
        std::cerr << "warning: skipping query " << queries[qi].query_id
                  << ": " << tasks[i].error << '\n';
        skipped = true;
        break;
      }
    }
    if (skipped) {
      ++result.queries_skipped;
      continue;
    }

    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = begin + i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       if (tasks[a].utility != tasks[b].utility) {
                         return tasks[a].utility > tasks[b].utility;
                       }
                       return tasks[a].rank < tasks[b].rank;
                     });
    for (std::size_t i : order) {
      UtilityRecord rec;
      rec.query_id = queries[qi].query_id;
      rec.doc_id = tasks[i].doc_id;
      rec.utility = tasks[i].utility;
      rec.grade = static_cast<int>(
          std::lround(tasks[i].utility * static_cast<double>(options.g_max)));
      rec.generator_output = tasks[i].output;
      result.records.push_back(std::move(rec));
    }
    ++result.queries_labeled;
  }
  return result;
}

void write_utility_jsonl(const std::string& path,
                         const std::vector<UtilityRecord>& records) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot open for writing: " + path);
  for (const UtilityRecord& r : records) {
    nlohmann::json j{{"query_id", r.query_id},
                     {"doc_id", r.doc_id},
                     {"utility", r.utility},
                     {"grade", r.grade},
                     {"output", r.generator_output}};
    os << j.dump() << '\n';
  }
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

std::vector<UtilityRecord> read_utility_jsonl(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::io, "cannot open: " + path);
  std::vector<UtilityRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("query_id") || !j.contains("doc_id")) {
      fail(ErrorCode::parse,
           path + ":" + std::to_string(line_no) + ": bad utility record");
    }
    UtilityRecord r;
    r.query_id = j["query_id"].get<std::string>();
    r.doc_id = j["doc_id"].get<std::string>();
    r.utility = j.value("utility", 0.0);
    r.grade = j.value("grade", 0);
    r.generator_output = j.value("output", "");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace lure
