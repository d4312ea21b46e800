#include "lure/prompt.hpp"

#include "lure/common.hpp"

namespace lure {

std::string build_prompt(const Query& q,
                         const std::vector<const Document*>& docs,
                         const std::string& prompt_template,
                         std::size_t max_doc_chars) {
  const std::size_t contexts_pos = prompt_template.find("{contexts}");
  const std::size_t question_pos = prompt_template.find("{question}");
  if (contexts_pos == std::string::npos) {
    fail(ErrorCode::invalid_argument,
         "prompt template is missing the {contexts} placeholder");
  }
  if (question_pos == std::string::npos) {
    fail(ErrorCode::invalid_argument,
         "prompt template is missing the {question} placeholder");
  }

  std::string contexts;
  for (const Document* d : docs) {
    if (!contexts.empty()) contexts += "\n\n";
    contexts += d->text.substr(0, max_doc_chars);
  }

  std::string out = prompt_template;
  auto replace = [&](const std::string& placeholder, const std::string& value) {
    const std::size_t pos = out.find(placeholder);
    out.replace(pos, placeholder.size(), value);
  };
  replace("{contexts}", contexts);
  replace("{question}", q.text);
  return out;
}

}  // namespace lure
