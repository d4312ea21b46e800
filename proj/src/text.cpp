#include "lure/text.hpp"

#include <cstdint>

namespace lure {
namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
};

// Minimal UTF-8 decoder. Malformed bytes are passed through as single
// codepoints so tokenization never fails on dirty input.
Decoded decode_utf8(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](std::size_t k) {
    return i + k < s.size() &&
           (static_cast<unsigned char>(s[i + k]) & 0xc0) == 0x80;
  };
  auto bits = [&](std::size_t k) {
    return static_cast<char32_t>(static_cast<unsigned char>(s[i + k]) & 0x3f);
  };
  if ((b0 & 0xe0) == 0xc0 && cont(1)) {
    return {static_cast<char32_t>((b0 & 0x1f) << 6) | bits(1), 2};
  }
  if ((b0 & 0xf0) == 0xe0 && cont(1) && cont(2)) {
    return {static_cast<char32_t>((b0 & 0x0f) << 12) | (bits(1) << 6) |
                bits(2),
            3};
  }
  if ((b0 & 0xf8) == 0xf0 && cont(1) && cont(2) && cont(3)) {
    return {static_cast<char32_t>((b0 & 0x07) << 18) | (bits(1) << 12) |
                (bits(2) << 6) | bits(3),
            4};
  }
  return {b0, 1};
}

bool is_space_cp(char32_t c) {
  switch (c) {
    case U'\t':
    case U'\n':
    case U'\v':
    case U'\f':
    case U'\r':
    case U' ':
    case 0x85:    // next line
    case 0xa0:    // no-break space
    case 0x1680:  // ogham space mark
    case 0x2028:  // line separator
    case 0x2029:  // paragraph separator
    case 0x202f:  // narrow no-break space
    case 0x205f:  // medium mathematical space
    case 0x3000:  // ideographic space
      return true;
    default:
      return c >= 0x2000 && c <= 0x200a;
  }
}

bool is_punct_cp(char32_t c) {
  if (c < 0x80) {
    return (c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) ||
           (c >= 0x5b && c <= 0x60) || (c >= 0x7b && c <= 0x7e);
  }
  if (c >= 0xa1 && c <= 0xbf) return true;      // Latin-1 signs
  if (c >= 0x2010 && c <= 0x2027) return true;  // dashes, quotes, bullets
  if (c >= 0x2030 && c <= 0x205e) return true;  // primes, guillemets, ...
  if (c >= 0x3001 && c <= 0x303f) return true;  // CJK punctuation
  if (c >= 0xfe50 && c <= 0xfe6f) return true;  // small form variants
  if (c >= 0xff01 && c <= 0xff0f) return true;  // fullwidth forms
  if (c >= 0xff1a && c <= 0xff20) return true;
  if (c >= 0xff3b && c <= 0xff40) return true;
  if (c >= 0xff5b && c <= 0xff65) return true;
  return false;
}

bool is_separator_cp(char32_t c) { return is_space_cp(c) || is_punct_cp(c); }

// ASCII plus the unaccented Latin-1 uppercase range; other scripts are kept
// verbatim.
void append_lowered(std::string& out, std::string_view src, std::size_t pos,
                    const Decoded& d) {
  if (d.cp >= 'A' && d.cp <= 'Z') {
    out.push_back(static_cast<char>(d.cp - 'A' + 'a'));
    return;
  }
  if (d.cp >= 0xc0 && d.cp <= 0xde && d.cp != 0xd7) {
    const char32_t lower = d.cp + 0x20;
    out.push_back(static_cast<char>(0xc0 | (lower >> 6)));
    out.push_back(static_cast<char>(0x80 | (lower & 0x3f)));
    return;
  }
  out.append(src.substr(pos, d.len));
}

template <typename OnTerm>
void scan_terms(std::string_view text, OnTerm&& on_term) {
  std::string current;
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = decode_utf8(text, i);
    if (is_separator_cp(d.cp)) {
      if (!current.empty()) {
        on_term(std::move(current));
        current.clear();
      }
    } else {
      append_lowered(current, text, i, d);
    }
    i += d.len;
  }
  if (!current.empty()) on_term(std::move(current));
}

bool is_article(std::string_view t) {
  return t == "a" || t == "an" || t == "the";
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> terms;
  scan_terms(text, [&](std::string t) { terms.push_back(std::move(t)); });
  return terms;
}

std::string normalize_answer(std::string_view s) {
  std::string out;
  scan_terms(s, [&](std::string t) {
    if (is_article(t)) return;
    if (!out.empty()) out.push_back(' ');
    out += t;
  });
  return out;
}

std::vector<std::string> normalize_tokens(std::string_view s) {
  std::vector<std::string> terms;
  scan_terms(s, [&](std::string t) {
    if (!is_article(t)) terms.push_back(std::move(t));
  });
  return terms;
}

}  // namespace lure
