#include "lure/topics.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "lure/common.hpp"

namespace lure {
namespace {

constexpr char kModelMagic[] = "LURELDA";
constexpr std::uint32_t kModelVersion = 1;

std::size_t sample_discrete(const std::vector<double>& weights, double total,
                            Rng& rng) {
  double u = rng.next_double() * total;
  for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
    u -= weights[k];
    if (u < 0.0) return k;
  }
  return weights.size() - 1;
}

}  // namespace

TopicModel TopicModel::train(const std::vector<Document>& docs,
                             const LdaConfig& config) {
  if (config.num_topics < 2) {
    fail(ErrorCode::invalid_argument, "num_topics must be >= 2");
  }
  if (config.iterations < 1) {
    fail(ErrorCode::invalid_argument, "iterations must be >= 1");
  }

  TopicModel model;
  model.num_topics_ = config.num_topics;
  model.alpha_ = config.alpha > 0.0
                     ? config.alpha
                     : 50.0 / static_cast<double>(config.num_topics);
  model.beta_ = config.beta;
  model.seed_ = config.seed;

  Rng rng(config.seed);

  // Optional random subsample of the corpus for training.
  std::vector<const Document*> pool;
  pool.reserve(docs.size());
  for (const Document& d : docs) pool.push_back(&d);
  if (config.doc_subset > 0 && config.doc_subset < pool.size()) {
    rng.shuffle(pool);
    pool.resize(config.doc_subset);
  }

  // Token streams per document, skipping empty ones; vocabulary is assigned
  // in first-appearance order so training is order-stable.
  std::vector<std::vector<std::size_t>> doc_words;
  for (const Document* d : pool) {
    if (d->tokens.empty()) continue;
    std::vector<std::size_t> words;
    words.reserve(d->tokens.size());
    for (const std::string& t : d->tokens) {
      auto [it, inserted] = model.vocab_.emplace(t, model.terms_.size());
      if (inserted) model.terms_.push_back(t);
      words.push_back(it->second);
    }
    doc_words.push_back(std::move(words));
  }
  if (doc_words.empty()) {
    fail(ErrorCode::invalid_argument,
         "LDA training corpus is empty after dropping empty documents");
  }

  const std::size_t num_topics = model.num_topics_;
  const std::size_t vocab = model.terms_.size();
  const double alpha = model.alpha_;
  const double beta = model.beta_;

  std::vector<std::uint32_t> word_topic(vocab * num_topics, 0);  // n_wk
  std::vector<std::uint32_t> topic_total(num_topics, 0);         // n_k
  std::vector<std::vector<std::uint32_t>> doc_topic(doc_words.size());
  std::vector<std::vector<std::uint16_t>> assignment(doc_words.size());

  for (std::size_t d = 0; d < doc_words.size(); ++d) {
    doc_topic[d].assign(num_topics, 0);
    assignment[d].resize(doc_words[d].size());
    for (std::size_t i = 0; i < doc_words[d].size(); ++i) {
      const auto k = static_cast<std::size_t>(rng.next_below(num_topics));
      assignment[d][i] = static_cast<std::uint16_t>(k);
      ++doc_topic[d][k];
      ++word_topic[doc_words[d][i] * num_topics + k];
      ++topic_total[k];
    }
  }

  std::vector<double> weights(num_topics);
  const double beta_sum = beta * static_cast<double>(vocab);
  for (std::size_t iter = 0; iter < config.iterations; ++iter) {
    for (std::size_t d = 0; d < doc_words.size(); ++d) {
      for (std::size_t i = 0; i < doc_words[d].size(); ++i) {
        const std::size_t w = doc_words[d][i];
        const std::size_t old_k = assignment[d][i];
        --doc_topic[d][old_k];
        --word_topic[w * num_topics + old_k];
        --topic_total[old_k];

        double total = 0.0;
        for (std::size_t k = 0; k < num_topics; ++k) {
          const double p = (doc_topic[d][k] + alpha) *
                           (word_topic[w * num_topics + k] + beta) /
                           (topic_total[k] + beta_sum);
          weights[k] = p;
          total += p;
        }
        const std::size_t new_k = sample_discrete(weights, total, rng);
        assignment[d][i] = static_cast<std::uint16_t>(new_k);
        ++doc_topic[d][new_k];
        ++word_topic[w * num_topics + new_k];
        ++topic_total[new_k];
      }
    }
  }

  model.phi_.resize(num_topics * vocab);
  for (std::size_t k = 0; k < num_topics; ++k) {
    const double denom = topic_total[k] + beta_sum;
    for (std::size_t w = 0; w < vocab; ++w) {
      model.phi_[k * vocab + w] = (word_topic[w * num_topics + k] + beta) / denom;
    }
  }
  return model;
}

TopicDistribution TopicModel::infer_theta(
    const std::vector<std::string>& tokens, std::size_t fold_in_iterations,
    std::uint64_t seed) const {
  const std::size_t num_topics = num_topics_;
  TopicDistribution theta(num_topics,
                          1.0 / static_cast<double>(num_topics));

  std::vector<std::size_t> words;
  words.reserve(tokens.size());
  for (const std::string& t : tokens) {
    auto it = vocab_.find(t);
    if (it != vocab_.end()) words.push_back(it->second);
  }
  if (words.empty()) return theta;  // all-OOV fallback: uniform

  Rng rng(seed);
  const std::size_t vocab = terms_.size();
  std::vector<std::uint32_t> counts(num_topics, 0);
  std::vector<std::uint16_t> assignment(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto k = static_cast<std::size_t>(rng.next_below(num_topics));
    assignment[i] = static_cast<std::uint16_t>(k);
    ++counts[k];
  }

  std::vector<double> weights(num_topics);
  for (std::size_t iter = 0; iter < fold_in_iterations; ++iter) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      const std::size_t w = words[i];
      const std::size_t old_k = assignment[i];
      --counts[old_k];
      double total = 0.0;
      for (std::size_t k = 0; k < num_topics; ++k) {
        const double p = (counts[k] + alpha_) * phi_[k * vocab + w];
        weights[k] = p;
        total += p;
      }
      const std::size_t new_k = sample_discrete(weights, total, rng);
      assignment[i] = static_cast<std::uint16_t>(new_k);
      ++counts[new_k];
    }
  }

  const double denom = static_cast<double>(words.size()) +
                       alpha_ * static_cast<double>(num_topics);
  for (std::size_t k = 0; k < num_topics; ++k) {
    theta[k] = (counts[k] + alpha_) / denom;
  }
  return theta;
}

void TopicModel::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) fail(ErrorCode::io, "cannot open for writing: " + path);
  os.write(kModelMagic, sizeof(kModelMagic) - 1);
  auto write_u32 = [&](std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
  };
  auto write_u64 = [&](std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
  };
  auto write_f64 = [&](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    write_u64(bits);
  };
  write_u32(kModelVersion);
  write_u64(num_topics_);
  write_u64(terms_.size());
  write_f64(alpha_);
  write_f64(beta_);
  write_u64(seed_);
  for (const std::string& t : terms_) {
    write_u64(t.size());
    os.write(t.data(), static_cast<std::streamsize>(t.size()));
  }
  for (double v : phi_) write_f64(v);
  if (!os) fail(ErrorCode::io, "write failed: " + path);
}

TopicModel TopicModel::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) fail(ErrorCode::io, "cannot open: " + path);
  char magic[sizeof(kModelMagic) - 1];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    fail(ErrorCode::parse, "not a topic model file: " + path);
  }
  auto read_u32 = [&]() {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
  };
  auto read_u64 = [&]() {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
  };
  auto read_f64 = [&]() {
    const std::uint64_t bits = read_u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  };
  const std::uint32_t version = read_u32();
  if (version != kModelVersion) {
    fail(ErrorCode::parse, "unsupported topic model version " +
                               std::to_string(version) + " in " + path);
  }
  TopicModel model;
  model.num_topics_ = read_u64();
  const std::uint64_t vocab = read_u64();
  model.alpha_ = read_f64();
  model.beta_ = read_f64();
  model.seed_ = read_u64();
  model.terms_.reserve(vocab);
  for (std::uint64_t i = 0; i < vocab; ++i) {
    const std::uint64_t n = read_u64();
    std::string t(n, '\0');
    is.read(t.data(), static_cast<std::streamsize>(n));
    model.vocab_.emplace(t, static_cast<std::size_t>(i));
    model.terms_.push_back(std::move(t));
  }
  model.phi_.resize(model.num_topics_ * vocab);
  for (double& v : model.phi_) v = read_f64();
  if (!is) fail(ErrorCode::parse, "truncated topic model file: " + path);
  return model;
}

double topic_cosine(const TopicDistribution& a, const TopicDistribution& b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::invalid_argument,
         "topic distributions have different lengths: " +
             std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double top_topic_coverage(const TopicDistribution& q_theta,
                          const TopicDistribution& d_theta, std::size_t a) {
  if (q_theta.size() != d_theta.size()) {
    fail(ErrorCode::invalid_argument,
         "topic distributions have different lengths");
  }
  if (a < 1 || a > q_theta.size()) {
    fail(ErrorCode::invalid_argument,
         "top-topic count out of range: " + std::to_string(a));
  }
  std::vector<std::size_t> order(q_theta.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (q_theta[x] != q_theta[y]) return q_theta[x] > q_theta[y];
    return x < y;  // tie at the boundary: lower topic index wins
  });
  double sum = 0.0;
  for (std::size_t i = 0; i < a; ++i) sum += d_theta[order[i]];
  return sum;
}

}  // namespace lure
