#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lure/corpus.hpp"

namespace lure {

// Probability distribution over topics; entries are >= 0 and sum to 1.
using TopicDistribution = std::vector<double>;

struct LdaConfig {
  std::size_t num_topics = 100;
  std::size_t iterations = 500;
  double alpha = 0.0;  // 0 means the 50/num_topics heuristic
  double beta = 0.01;
  std::uint64_t seed = 42;
  std::size_t doc_subset = 0;  // 0 = train on all documents
};

// Topic-word model trained by collapsed Gibbs sampling. Immutable once
// trained; concurrent infer_theta calls are safe since each owns its RNG.
class TopicModel {
 public:
  // Documents with no in-vocabulary tokens are dropped; training on an
  // effectively empty corpus is an error. Deterministic under seed.
  static TopicModel train(const std::vector<Document>& docs,
                          const LdaConfig& config);

  std::size_t num_topics() const { return num_topics_; }
  std::size_t vocab_size() const { return vocab_.size(); }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }

  // Row-major topic-word probabilities, one row per topic, each summing to 1.
  const std::vector<double>& phi() const { return phi_; }
  double phi_at(std::size_t topic, std::size_t word) const {
    return phi_[topic * vocab_.size() + word];
  }
  const std::vector<std::string>& vocab_terms() const { return terms_; }

  // Fold-in Gibbs sampling with phi held fixed. Out-of-vocabulary tokens are
  // ignored; if none remain the uniform distribution is returned.
  TopicDistribution infer_theta(const std::vector<std::string>& tokens,
                                std::size_t fold_in_iterations,
                                std::uint64_t seed) const;

  void save(const std::string& path) const;
  static TopicModel load(const std::string& path);

 private:
  TopicModel() = default;

  std::size_t num_topics_ = 0;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  std::uint64_t seed_ = 0;
  std::vector<std::string> terms_;                     // index -> term
  std::unordered_map<std::string, std::size_t> vocab_;  // term -> index
  std::vector<double> phi_;  // num_topics_ x terms_.size(), row-major
};

// Cosine similarity of two topic distributions; in [0, 1] since entries are
// nonnegative. Errors on length mismatch.
double topic_cosine(const TopicDistribution& a, const TopicDistribution& b);

// Sum of d's probabilities over the a largest entries of q (ties broken by
// lower topic index). Requires 1 <= a <= num_topics.
double top_topic_coverage(const TopicDistribution& q_theta,
                          const TopicDistribution& d_theta, std::size_t a);

}  // namespace lure
