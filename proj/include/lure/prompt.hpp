#pragma once

#include <string>
#include <vector>

#include "lure/corpus.hpp"

namespace lure {

// Expands a template containing {contexts} and {question}. Documents are
// inserted in rank order (rank 1 first), separated by blank lines, each
// truncated to max_doc_chars characters. Errors if either placeholder is
// missing.
std::string build_prompt(const Query& q,
                         const std::vector<const Document*>& docs,
                         const std::string& prompt_template,
                         std::size_t max_doc_chars);

}  // namespace lure
