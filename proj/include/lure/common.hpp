#pragma once

#include <charconv>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lure {

enum class ErrorCode {
  invalid_argument,
  not_found,
  duplicate_id,
  parse,
  io,
  generator,
  internal,
};

// All core failures surface as Error; the C API maps code() to lure_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

// Deterministic RNG used everywhere randomness is needed. mt19937_64 output
// is fully specified by the standard, and doubles are derived from raw bits
// so sequences are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). Rejection sampling keeps the distribution exact.
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0) fail(ErrorCode::invalid_argument, "next_below: n must be > 0");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[next_below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

inline std::uint64_t fnv1a64(std::string_view s,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Seed for per-(query, doc) topic inference: reproducible regardless of the
// order pairs are processed in.
inline std::uint64_t pair_seed(std::uint64_t base, std::string_view query_id,
                               std::string_view doc_id) {
  std::uint64_t h = fnv1a64(query_id);
  h = fnv1a64("\x1f", h);
  h = fnv1a64(doc_id, h);
  return h ^ (base * 0x9e3779b97f4a7c15ull);
}

// Shortest round-trip decimal representation; used wherever floats are
// written to text files so output is deterministic and full-precision.
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

}  // namespace lure
