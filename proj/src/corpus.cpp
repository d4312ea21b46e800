#include "lure/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lure/common.hpp"

namespace lure {
namespace {

constexpr char kIndexMagic[] = "LUREIDX";
constexpr std::uint32_t kIndexVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void write_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void write_f64(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  write_u64(os, bits);
}

void write_str(std::ostream& os, std::string_view s) {
  write_u64(os, s.size());
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::uint64_t read_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double read_f64(std::istream& is) {
  const std::uint64_t bits = read_u64(is);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string read_str(std::istream& is) {
  const std::uint64_t n = read_u64(is);
  std::string s(n, '\0');
  is.read(s.data(), static_cast<std::streamsize>(n));
  return s;
}

}  // namespace

Document Document::make(std::string doc_id, std::string text) {
  Document d;
  d.doc_id = std::move(doc_id);
  d.tokens = tokenize(text);
  d.text = std::move(text);
  return d;
}

Query Query::make(std::string query_id, std::string text,
                  std::vector<std::string> gold_answers) {
  Query q;
  q.query_id = std::move(query_id);
  q.tokens = tokenize(text);
  q.text = std::move(text);
  q.gold_answers = std::move(gold_answers);
  return q;
}

Index Index::build(std::vector<Document> docs, Bm25Params params) {
  Index index;
  index.params_ = params;
  index.docs_ = std::move(docs);
  index.doc_lengths_.reserve(index.docs_.size());

  std::uint64_t total_len = 0;
  for (std::uint32_t ord = 0; ord < index.docs_.size(); ++ord) {
    const Document& d = index.docs_[ord];
    if (d.doc_id.empty()) {
      fail(ErrorCode::invalid_argument, "document with empty doc_id");
    }
    if (!index.id_to_ord_.emplace(d.doc_id, ord).second) {
      fail(ErrorCode::duplicate_id, "duplicate doc_id: " + d.doc_id);
    }
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(d.tokens.size()));
    total_len += d.tokens.size();

    std::unordered_map<std::string, std::uint32_t> tf;
    for (const std::string& t : d.tokens) ++tf[t];
    for (const auto& [term, count] : tf) {
      index.postings_[term].push_back({ord, count});
    }
  }
  // Postings arrive in doc-ordinal order already; keep that invariant
  // explicit for the serialized form.
  for (auto& [term, list] : index.postings_) {
    std::sort(list.begin(), list.end(),
              [](const Posting& a, const Posting& b) { return a.doc < b.doc; });
  }
  index.avg_doc_len_ = index.docs_.empty()
                           ? 0.0
                           : static_cast<double>(total_len) /
                                 static_cast<double>(index.docs_.size());
  return index;
}

bool Index::contains(std::string_view doc_id) const {
  return id_to_ord_.find(std::string(doc_id)) != id_to_ord_.end();
}

const Document& Index::doc(std::string_view doc_id) const {
  auto it = id_to_ord_.find(std::string(doc_id));
  if (it == id_to_ord_.end()) {
    fail(ErrorCode::not_found, "unknown doc_id: " + std::string(doc_id));
  }
  return docs_[it->second];
}

std::size_t Index::doc_length(std::string_view doc_id) const {
  auto it = id_to_ord_.find(std::string(doc_id));
  if (it == id_to_ord_.end()) {
    fail(ErrorCode::not_found, "unknown doc_id: " + std::string(doc_id));
  }
  return doc_lengths_[it->second];
}

std::size_t Index::doc_freq(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? 0 : it->second.size();
}

double Index::idf(const std::string& term) const {
  const double n = static_cast<double>(num_docs());
  const double df = static_cast<double>(doc_freq(term));
  return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

double Index::bm25_score(const Query& q, std::string_view doc_id) const {
  auto it = id_to_ord_.find(std::string(doc_id));
  if (it == id_to_ord_.end()) {
    fail(ErrorCode::not_found, "unknown doc_id: " + std::string(doc_id));
  }
  const std::uint32_t ord = it->second;

  // Each distinct query term contributes once regardless of multiplicity.
  double score = 0.0;
  std::vector<std::string> seen;
  for (const std::string& term : q.tokens) {
    if (std::find(seen.begin(), seen.end(), term) != seen.end()) continue;
    seen.push_back(term);
    auto pit = postings_.find(term);
    if (pit == postings_.end()) continue;
    const auto& list = pit->second;
    auto lit = std::lower_bound(
        list.begin(), list.end(), ord,
        [](const Posting& p, std::uint32_t o) { return p.doc < o; });
    if (lit == list.end() || lit->doc != ord) continue;
    const double tf = lit->tf;
    const double len = doc_lengths_[ord];
    const double norm =
        params_.k1 * (1.0 - params_.b + params_.b * len / avg_doc_len_);
    score += idf(term) * tf * (params_.k1 + 1.0) / (tf + norm);
  }
  return score;
}

std::vector<ScoredDoc> Index::retrieve(const Query& q, std::size_t n) const {
  if (n < 1) fail(ErrorCode::invalid_argument, "retrieve: n must be >= 1");

  std::vector<double> scores(docs_.size(), 0.0);
  std::vector<std::string> seen;
  for (const std::string& term : q.tokens) {
    if (std::find(seen.begin(), seen.end(), term) != seen.end()) continue;
    seen.push_back(term);
    auto pit = postings_.find(term);
    if (pit == postings_.end()) continue;
    const double term_idf = idf(term);
    for (const Posting& p : pit->second) {
      const double tf = p.tf;
      const double len = doc_lengths_[p.doc];
      const double norm =
          params_.k1 * (1.0 - params_.b + params_.b * len / avg_doc_len_);
      scores[p.doc] += term_idf * tf * (params_.k1 + 1.0) / (tf + norm);
    }
  }

  std::vector<std::uint32_t> hits;
  for (std::uint32_t ord = 0; ord < scores.size(); ++ord) {
    if (scores[ord] > 0.0) hits.push_back(ord);
  }
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return docs_[a].doc_id < docs_[b].doc_id;
  };
  if (hits.size() > n) {
    std::partial_sort(hits.begin(), hits.begin() + static_cast<long>(n),
                      hits.end(), better);
    hits.resize(n);
  } else {
    std::sort(hits.begin(), hits.end(), better);
  }

  std::vector<ScoredDoc> out;
  out.reserve(hits.size());
  for (std::uint32_t ord : hits) out.push_back({docs_[ord].doc_id, scores[ord]});
  return out;
}

void Index::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::io, "cannot open for writing: " + path);
  os.write(kIndexMagic, sizeof(kIndexMagic) - 1);
  write_u32(os, kIndexVersion);
  write_f64(os, params_.k1);
  write_f64(os, params_.b);
  write_u64(os, docs_.size());
  for (const Document& d : docs_) {
    write_str(os, d.doc_id);
    write_str(os, d.text);
  }
  // Terms in sorted order so the file is byte-stable across runs.
  std::vector<const std::string*> terms;
  terms.reserve(postings_.size());
  for (const auto& [term, list] : postings_) terms.push_back(&term);
  std::sort(terms.begin(), terms.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  write_u64(os, terms.size());
  for (const std::string* term : terms) {
    write_str(os, *term);
    const auto& list = postings_.at(*term);
    write_u64(os, list.size());
    for (const Posting& p : list) {
      write_u32(os, p.doc);
      write_u32(os, p.tf);
    }
  }
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

Index Index::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::io, "cannot open: " + path);
  char magic[sizeof(kIndexMagic) - 1];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kIndexMagic, sizeof(magic)) != 0) {
    fail(ErrorCode::parse, "not an index file: " + path);
  }
  const std::uint32_t version = read_u32(is);
  if (version != kIndexVersion) {
    fail(ErrorCode::parse, "unsupported index version " +
                               std::to_string(version) + " in " + path);
  }
  Index index;
  index.params_.k1 = read_f64(is);
  index.params_.b = read_f64(is);
  const std::uint64_t num_docs = read_u64(is);
  index.docs_.reserve(num_docs);
  std::uint64_t total_len = 0;
  for (std::uint64_t i = 0; i < num_docs; ++i) {
    std::string id = read_str(is);
    std::string text = read_str(is);
    Document d = Document::make(std::move(id), std::move(text));
    index.id_to_ord_.emplace(d.doc_id, static_cast<std::uint32_t>(i));
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(d.tokens.size()));
    total_len += d.tokens.size();
    index.docs_.push_back(std::move(d));
  }
  const std::uint64_t num_terms = read_u64(is);
  for (std::uint64_t i = 0; i < num_terms; ++i) {
    std::string term = read_str(is);
    const std::uint64_t df = read_u64(is);
    std::vector<Posting> list(df);
    for (auto& p : list) {
      p.doc = read_u32(is);
      p.tf = read_u32(is);
    }
    index.postings_.emplace(std::move(term), std::move(list));
  }
  if (!is) fail(ErrorCode::parse, "truncated index file: " + path);
  index.avg_doc_len_ = index.docs_.empty()
                           ? 0.0
                           : static_cast<double>(total_len) /
                                 static_cast<double>(index.docs_.size());
  return index;
}

std::vector<Document> read_corpus_jsonl(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::io, "cannot open: " + path);
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("doc_id") || !j.contains("text")) {
      fail(ErrorCode::parse, path + ":" + std::to_string(line_no) +
                                 ": expected {\"doc_id\", \"text\"}");
    }
    docs.push_back(Document::make(j["doc_id"].get<std::string>(),
                                  j["text"].get<std::string>()));
  }
  return docs;
}

std::vector<Query> read_queries_jsonl(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::io, "cannot open: " + path);
  std::vector<Query> queries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("query_id") ||
        !j.contains("question")) {
      fail(ErrorCode::parse, path + ":" + std::to_string(line_no) +
                                 ": expected {\"query_id\", \"question\"}");
    }
    std::vector<std::string> answers;
    if (j.contains("answers")) {
      answers = j["answers"].get<std::vector<std::string>>();
    }
    queries.push_back(Query::make(j["query_id"].get<std::string>(),
                                  j["question"].get<std::string>(),
                                  std::move(answers)));
  }
  return queries;
}

void write_corpus_jsonl(const std::string& path,
                        const std::vector<Document>& docs) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot open for writing: " + path);
  for (const Document& d : docs) {
    nlohmann::json j{{"doc_id", d.doc_id}, {"text", d.text}};
    os << j.dump() << '\n';
  }
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

void write_queries_jsonl(const std::string& path,
                         const std::vector<Query>& queries) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::io, "cannot open for writing: " + path);
  for (const Query& q : queries) {
    nlohmann::json j{{"query_id", q.query_id},
                     {"question", q.text},
                     {"answers", q.gold_answers}};
    os << j.dump() << '\n';
  }
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

std::vector<Document> split_passages(const std::vector<Document>& docs,
                                     std::size_t words) {
  if (words < 1) fail(ErrorCode::invalid_argument, "words must be >= 1");
  std::vector<Document> out;
  for (const Document& d : docs) {
    std::istringstream ss(d.text);
    std::vector<std::string> ws;
    std::string w;
    while (ss >> w) ws.push_back(std::move(w));
    if (ws.empty()) continue;
    std::size_t chunk = 0;
    for (std::size_t i = 0; i < ws.size(); i += words, ++chunk) {
      std::string text;
      for (std::size_t k = i; k < std::min(i + words, ws.size()); ++k) {
        if (!text.empty()) text.push_back(' ');
        text += ws[k];
      }
      out.push_back(Document::make(d.doc_id + "-p" + std::to_string(chunk),
                                   std::move(text)));
    }
  }
  return out;
}

}  // namespace lure
