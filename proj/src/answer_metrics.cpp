#include "lure/answer_metrics.hpp"

#include <algorithm>
#include <map>

#include "lure/common.hpp"
#include "lure/text.hpp"

namespace lure {
namespace {

void require_golds(const std::vector<std::string>& golds) {
  if (golds.empty()) {
    fail(ErrorCode::invalid_argument, "gold answer set is empty");
  }
}

std::size_t multiset_overlap(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  std::map<std::string, std::size_t> counts;
  for (const std::string& t : a) ++counts[t];
  std::size_t overlap = 0;
  for (const std::string& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

}  // namespace

double accuracy(std::string_view prediction,
                const std::vector<std::string>& golds) {
  require_golds(golds);
  const std::string pred = normalize_answer(prediction);
  for (const std::string& g : golds) {
    if (pred.find(normalize_answer(g)) != std::string::npos) return 1.0;
  }
  return 0.0;
}

double f1_score(std::string_view prediction,
                const std::vector<std::string>& golds) {
  require_golds(golds);
  const std::vector<std::string> pred = normalize_tokens(prediction);
  double best = 0.0;
  for (const std::string& g : golds) {
    const std::vector<std::string> gold = normalize_tokens(g);
    double f1;
    if (pred.empty() && gold.empty()) {
      f1 = 1.0;
    } else if (pred.empty() || gold.empty()) {
      f1 = 0.0;
    } else {
      // 2PR/(P+R) with P = o/|pred|, R = o/|gold| reduces to 2o/(|p|+|g|).
      const std::size_t o = multiset_overlap(gold, pred);
      f1 = 2.0 * static_cast<double>(o) /
           static_cast<double>(pred.size() + gold.size());
    }
    best = std::max(best, f1);
  }
  return best;
}

}  // namespace lure
