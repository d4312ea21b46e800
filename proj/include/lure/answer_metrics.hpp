#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lure {

// 1 if the normalized prediction contains some normalized gold answer as a
// substring, else 0. Errors on an empty gold set.
double accuracy(std::string_view prediction,
                const std::vector<std::string>& golds);

// Token-level multiset F1 over normalized tokens, maximized over golds.
// Both token lists empty -> 1; exactly one empty -> 0. Errors on an empty
// gold set.
double f1_score(std::string_view prediction,
                const std::vector<std::string>& golds);

}  // namespace lure
