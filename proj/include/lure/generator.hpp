#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace lure {

enum class GeneratorKind { mock, remote };

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::mock;
  std::string endpoint;    // remote only, e.g. "http://host:8000/v1"
  std::string model_name;  // remote only
  int timeout_ms = 30000;
  int max_retries = 3;
  std::int64_t seed = -1;  // forwarded to the endpoint when >= 0
};

// Black-box text generator. The remote client speaks the OpenAI-compatible
// chat-completions protocol at temperature 0; the mock is a pure function of
// the prompt, for offline runs and tests.
class GeneratorClient {
 public:
  virtual ~GeneratorClient() = default;
  virtual std::string generate(const std::string& prompt) const = 0;
};

// Remote requires non-empty endpoint and model_name. The bearer token is
// read from the GENERATOR_API_KEY environment variable when present.
std::unique_ptr<GeneratorClient> make_generator(const GeneratorConfig& config);

// Mock contract: the question part of the prompt (after the last
// "Question:" marker, or the whole prompt without one) names a subject via
// "fact about <subject>". If the context part contains
// "fact about <subject> is <answer>", the reply is the bare answer token;
// otherwise "i do not know".
std::string mock_reply(const std::string& prompt);

}  // namespace lure
