#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lure/text.hpp"

namespace lure {

struct Document {
  std::string doc_id;
  std::string text;
  std::vector<std::string> tokens;  // always tokenize(text)

  static Document make(std::string doc_id, std::string text);
};

struct Query {
  std::string query_id;
  std::string text;
  std::vector<std::string> tokens;
  std::vector<std::string> gold_answers;  // may be empty at inference time

  static Query make(std::string query_id, std::string text,
                    std::vector<std::string> gold_answers = {});
};

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct ScoredDoc {
  std::string doc_id;
  double score;
};

struct Posting {
  std::uint32_t doc = 0;  // ordinal into docs()
  std::uint32_t tf = 0;
};

// Immutable inverted index over a document collection. Construction is the
// only writer; all queries are const and safe to run concurrently.
class Index {
 public:
  static Index build(std::vector<Document> docs, Bm25Params params = {});

  std::size_t num_docs() const { return docs_.size(); }
  double avg_doc_len() const { return avg_doc_len_; }
  const Bm25Params& params() const { return params_; }
  const std::vector<Document>& docs() const { return docs_; }

  bool contains(std::string_view doc_id) const;
  const Document& doc(std::string_view doc_id) const;
  std::size_t doc_length(std::string_view doc_id) const;

  std::size_t doc_freq(const std::string& term) const;

  // Robertson BM25 idf with the +1 floor: ln((N - df + 0.5)/(df + 0.5) + 1).
  // Always positive; unseen terms use df = 0.
  double idf(const std::string& term) const;

  double bm25_score(const Query& q, std::string_view doc_id) const;

  // Top-n by BM25, descending; ties broken by ascending doc_id. Only
  // positive-scoring documents are returned.
  std::vector<ScoredDoc> retrieve(const Query& q, std::size_t n) const;

  // Versioned binary format (magic + version header).
  void save(const std::string& path) const;
  static Index load(const std::string& path);

 private:
  Index() = default;

  std::vector<Document> docs_;
  std::unordered_map<std::string, std::uint32_t> id_to_ord_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::uint32_t> doc_lengths_;
  double avg_doc_len_ = 0.0;
  Bm25Params params_;
};

// JSON-lines readers. Corpus lines: {"doc_id": ..., "text": ...}.
// Dataset lines: {"query_id": ..., "question": ..., "answers": [...]}.
std::vector<Document> read_corpus_jsonl(const std::string& path);
std::vector<Query> read_queries_jsonl(const std::string& path);
void write_corpus_jsonl(const std::string& path,
                        const std::vector<Document>& docs);
void write_queries_jsonl(const std::string& path,
                         const std::vector<Query>& queries);

// Splits documents into consecutive chunks of `words` whitespace-separated
// words; chunk ids are "<doc_id>-p<n>". The trailing chunk may be shorter.
std::vector<Document> split_passages(const std::vector<Document>& docs,
                                     std::size_t words);

}  // namespace lure
