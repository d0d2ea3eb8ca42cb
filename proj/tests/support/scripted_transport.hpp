#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "xform/llm/gateway.hpp"

namespace xform::testing {

/// Chat-completions response body carrying `text`.
std::string chat_response_body(std::string_view text);

/// Serves canned completions by request purpose. Sequences are consumed in
/// order and the last entry repeats; lookups are answered from a table keyed
/// by the quoted source value in the prompt.
class ScriptedTransport : public Transport {
 public:
  ScriptedTransport() = default;
  /// Keys are purpose names (Classify, StringGen, ...); values are a string
  /// or an array of strings. "Lookup" maps source values to answers.
  explicit ScriptedTransport(const nlohmann::json& script);
  static std::shared_ptr<ScriptedTransport> load(const std::filesystem::path& path);

  void add(Purpose purpose, std::string response);
  void add_lookup(std::string source, std::string answer);

  HttpResponse post(const HttpRequest& request) override;

  [[nodiscard]] std::size_t posts() const;
  [[nodiscard]] std::vector<HttpRequest> requests() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<std::string>> sequences_;
  std::map<std::string, std::size_t> cursor_;
  std::map<std::string, std::string> lookups_;
  std::vector<HttpRequest> seen_;
};

/// Extracts the value from a lookup prompt's `Source value: "..."` line.
std::string lookup_source(std::string_view user_text);

}  // namespace xform::testing
