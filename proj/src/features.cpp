#include "lure/features.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>

#include "lure/common.hpp"

namespace lure {

const std::array<const char*, kNumFeatures> kFeatureNames = {
    "query_len",     "query_distinct_terms", "query_idf_min",
    "query_idf_max", "query_idf_mean",       "doc_len",
    "doc_distinct_terms", "doc_idf_min",     "doc_idf_max",
    "doc_idf_mean",  "term_overlap",         "bm25_score",
    "topic_cosine",  "top_topic_coverage",
};

namespace {

struct IdfStats {
  double min = 0.0, max = 0.0, mean = 0.0;
};

// Aggregates over the distinct terms of a text; empty input leaves all three
// at 0, outside the (strictly positive) idf range.
IdfStats idf_stats(const Index& index, const std::set<std::string>& terms) {
  IdfStats s;
  if (terms.empty()) return s;
  s.min = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const std::string& t : terms) {
    const double v = index.idf(t);
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
    sum += v;
  }
  s.mean = sum / static_cast<double>(terms.size());
  return s;
}

}  // namespace

FeatureVector extract_features(const Index& index, const TopicModel& model,
                               const Query& q, std::string_view doc_id,
                               const FeatureParams& params) {
  const Document& d = index.doc(doc_id);

  const std::set<std::string> q_terms(q.tokens.begin(), q.tokens.end());
  const std::set<std::string> d_terms(d.tokens.begin(), d.tokens.end());

  const IdfStats qs = idf_stats(index, q_terms);
  const IdfStats ds = idf_stats(index, d_terms);

  std::size_t overlap = 0;
  for (const std::string& t : q_terms) overlap += d_terms.count(t);

  const std::uint64_t seed = pair_seed(params.seed, q.query_id, d.doc_id);
  const TopicDistribution theta_q =
      model.infer_theta(q.tokens, params.fold_in_iterations, seed ^ 0x71ULL);
  const TopicDistribution theta_d =
      model.infer_theta(d.tokens, params.fold_in_iterations, seed ^ 0xd1ULL);

  FeatureVector f;
  f[0] = static_cast<double>(q.tokens.size());
  f[1] = static_cast<double>(q_terms.size());
  f[2] = qs.min;
  f[3] = qs.max;
  f[4] = qs.mean;
  f[5] = static_cast<double>(d.tokens.size());
  f[6] = static_cast<double>(d_terms.size());
  f[7] = ds.min;
  f[8] = ds.max;
  f[9] = ds.mean;
  f[10] = static_cast<double>(overlap);
  f[11] = index.bm25_score(q, doc_id);
  f[12] = topic_cosine(theta_q, theta_d);
  f[13] = top_topic_coverage(theta_q, theta_d, params.top_a);
  return f;
}

std::vector<std::pair<std::string, FeatureVector>> batch_extract(
    const Index& index, const TopicModel& model, const Query& q,
    const std::vector<std::string>& doc_ids, const FeatureParams& params) {
  std::vector<std::pair<std::string, FeatureVector>> out;
  out.reserve(doc_ids.size());
  for (const std::string& id : doc_ids) {
    if (!index.contains(id)) {
      fail(ErrorCode::not_found, "batch_extract: unknown doc_id: " + id);
    }
    out.emplace_back(id, extract_features(index, model, q, id, params));
  }
  return out;
}

void write_feature_file(const std::string& path,
                        const std::vector<FeatureFileRow>& rows) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot open for writing: " + path);
  for (const FeatureFileRow& r : rows) {
    os << r.label << " qid:" << r.query_id;
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      os << ' ' << (i + 1) << ':' << format_double(r.features[i]);
    }
    os << " #" << r.doc_id << '\n';
  }
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

std::vector<FeatureFileRow> read_feature_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::io, "cannot open: " + path);
  std::vector<FeatureFileRow> rows;
  std::string line;
  std::size_t line_no = 0;
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::parse,
         path + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    FeatureFileRow row;
    std::size_t pos = 0;
    auto next_field = [&]() -> std::string {
      while (pos < line.size() && line[pos] == ' ') ++pos;
      const std::size_t start = pos;
      while (pos < line.size() && line[pos] != ' ') ++pos;
      return line.substr(start, pos - start);
    };
    try {
      row.label = std::stoi(next_field());
    } catch (const std::exception&) {
      bad("expected integer label");
    }
    const std::string qid = next_field();
    if (qid.rfind("qid:", 0) != 0) bad("expected qid:<id>");
    row.query_id = qid.substr(4);
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      const std::string field = next_field();
      const std::string prefix = std::to_string(i + 1) + ":";
      if (field.rfind(prefix, 0) != 0) {
        bad("expected feature " + std::to_string(i + 1));
      }
      const std::string value = field.substr(prefix.size());
      const char* begin = value.data();
      const char* end = begin + value.size();
      auto res = std::from_chars(begin, end, row.features[i]);
      if (res.ec != std::errc() || res.ptr != end) {
        bad("bad feature value: " + field);
      }
    }
    const std::string tail = next_field();
    if (tail.size() < 2 || tail[0] != '#') bad("expected #<doc_id> comment");
    row.doc_id = tail.substr(1);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lure
