#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace lure {

// Lowercased terms split on Unicode whitespace and punctuation. Covers the
// common punctuation blocks (ASCII, Latin-1 signs, general punctuation,
// CJK symbols, fullwidth forms); unlisted codepoints count as word
// characters. Deterministic, no stemming, no stopword removal.
std::vector<std::string> tokenize(std::string_view text);

// Answer-string normalization for matching generator output against gold
// answers: lowercase, punctuation replaced by spaces, whitespace collapsed,
// English articles {a, an, the} dropped.
std::string normalize_answer(std::string_view s);

// normalize_answer followed by a whitespace split.
std::vector<std::string> normalize_tokens(std::string_view s);

}  // namespace lure
