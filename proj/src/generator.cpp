#include "lure/generator.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "lure/common.hpp"

namespace lure {
namespace {

std::string next_token_after(const std::string& text, std::size_t pos) {
  while (pos < text.size() &&
         std::isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  std::string tok;
  while (pos < text.size() &&
         std::isalnum(static_cast<unsigned char>(text[pos]))) {
    tok.push_back(text[pos++]);
  }
  return tok;
}

class MockGenerator final : public GeneratorClient {
 public:
  std::string generate(const std::string& prompt) const override {
    return mock_reply(prompt);
  }
};

class RemoteGenerator final : public GeneratorClient {
 public:
  explicit RemoteGenerator(GeneratorConfig config)
      : config_(std::move(config)) {
    // Split "scheme://host[:port]/base/path" into client root and path.
    const std::string& e = config_.endpoint;
    const std::size_t scheme = e.find("://");
    const std::size_t path_start =
        scheme == std::string::npos ? e.find('/') : e.find('/', scheme + 3);
    if (path_start == std::string::npos) {
      root_ = e;
    } else {
      root_ = e.substr(0, path_start);
      base_path_ = e.substr(path_start);
      while (!base_path_.empty() && base_path_.back() == '/') {
        base_path_.pop_back();
      }
    }
    if (const char* key = std::getenv("GENERATOR_API_KEY")) {
      api_key_ = key;
    }
  }

  std::string generate(const std::string& prompt) const override {
    nlohmann::json body{
        {"model", config_.model_name},
        {"messages",
         nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"temperature", 0},
    };
    if (config_.seed >= 0) body["seed"] = config_.seed;
    const std::string payload = body.dump();

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(50 * attempt));
      }
      httplib::Client client(root_);
      client.set_connection_timeout(0, config_.timeout_ms * 1000);
      client.set_read_timeout(config_.timeout_ms / 1000,
                              (config_.timeout_ms % 1000) * 1000);
      httplib::Headers headers;
      if (!api_key_.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key_);
      }
      auto res = client.Post(base_path_ + "/chat/completions", headers,
                             payload, "application/json");
      if (!res) {
        last_error = "connection failed: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status < 200 || res->status >= 300) {
        std::string excerpt = res->body.substr(0, 200);
        last_error = "HTTP " + std::to_string(res->status) + ": " + excerpt;
        continue;
      }
      nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
      if (reply.is_discarded() || !reply.contains("choices") ||
          reply["choices"].empty() ||
          !reply["choices"][0].contains("message")) {
        fail(ErrorCode::generator,
             "malformed completion response: " + res->body.substr(0, 200));
      }
      return reply["choices"][0]["message"].value("content", "");
    }
    fail(ErrorCode::generator,
         "generator request failed after " +
             std::to_string(config_.max_retries + 1) + " attempts: " +
             last_error);
  }

 private:
  GeneratorConfig config_;
  std::string root_;
  std::string base_path_;
  std::string api_key_;
};

}  // namespace

std::string mock_reply(const std::string& prompt) {
  static const std::string kUnknown = "i do not know";
  static const std::string kMarker = "fact about ";

  const std::size_t question_pos = prompt.rfind("Question:");
  const std::size_t q_begin =
      question_pos == std::string::npos ? 0 : question_pos;

  const std::size_t subject_pos = prompt.find(kMarker, q_begin);
  if (subject_pos == std::string::npos) return kUnknown;
  const std::string subject =
      next_token_after(prompt, subject_pos + kMarker.size());
  if (subject.empty()) return kUnknown;

  const std::string needle = kMarker + subject + " is ";
  const std::size_t context_end =
      question_pos == std::string::npos ? prompt.size() : question_pos;
  const std::size_t hit = prompt.substr(0, context_end).find(needle);
  if (hit == std::string::npos) return kUnknown;
  const std::string answer = next_token_after(prompt, hit + needle.size());
  return answer.empty() ? kUnknown : answer;
}

std::unique_ptr<GeneratorClient> make_generator(const GeneratorConfig& config) {
  if (config.kind == GeneratorKind::mock) {
    return std::make_unique<MockGenerator>();
  }
  if (config.endpoint.empty() || config.model_name.empty()) {
    fail(ErrorCode::invalid_argument,
         "remote generator requires endpoint and model name");
  }
  return std::make_unique<RemoteGenerator>(config);
}

}  // namespace lure
