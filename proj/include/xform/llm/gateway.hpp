#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace xform {

enum class Purpose { Classify, StringGen, RelTag, AlgoGen, TypeDetect, Lookup };
inline constexpr std::size_t kPurposeCount = 6;

std::string_view to_string(Purpose p) noexcept;
std::optional<Purpose> parse_purpose(std::string_view name);

struct PromptRequest {
  std::string system_text;
  std::string user_text;
  double temperature = 0.0;
  std::size_t max_output_chars = 4000;
  Purpose purpose = Purpose::Classify;
};

/// Empty text means the model returned nothing; callers decide what that means.
struct Completion {
  std::string text;
  std::string backend_id;
  bool cached = false;
};

enum class BackendMode { Http, Replay, Record };

std::string_view to_string(BackendMode m) noexcept;
std::optional<BackendMode> parse_backend_mode(std::string_view name);

struct BackendConfig {
  BackendMode mode = BackendMode::Replay;
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model_name;
  std::string api_key_env = "OPENAI_API_KEY";
  std::filesystem::path fixture_dir;
  std::chrono::milliseconds timeout{60'000};
  int max_retries = 3;
  std::chrono::milliseconds retry_base_delay{500};
  /// Hard cap on completions per gateway; 0 disables the cap.
  std::size_t max_total_calls = 0;

  /// Throws InvalidConfig.
  void validate() const;
};

/// SHA-256 (hex) over system text, user text, temperature and purpose.
std::string request_digest(const PromptRequest& request);

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
  std::chrono::milliseconds timeout{60'000};
};

struct HttpResponse {
  int status = 0;  // 0 when no response arrived
  std::string body;
  bool timed_out = false;
  std::string transport_error;
};

/// The only path to the network; tests substitute their own.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post(const HttpRequest& request) = 0;
};

std::shared_ptr<Transport> make_http_transport();

/// Chat-completions JSON body for `request`.
std::string build_chat_body(const PromptRequest& request, const std::string& model);
/// Assistant text from a chat-completions response. Throws BadResponse.
std::string parse_chat_response(std::string_view body);

struct FixtureRecord {
  std::string digest;
  Purpose purpose = Purpose::Classify;
  std::string system_text;
  std::string user_text;
  double temperature = 0.0;
  std::string model;
  std::string response;
};

std::filesystem::path fixture_path(const std::filesystem::path& dir, std::string_view digest);
std::optional<FixtureRecord> read_fixture(const std::filesystem::path& dir, std::string_view digest);
void write_fixture(const std::filesystem::path& dir, const FixtureRecord& record);

/// Completion backend shared by every LLM-facing stage. Safe for concurrent use.
class Gateway {
 public:
  explicit Gateway(BackendConfig config, std::shared_ptr<Transport> transport = nullptr);

  Completion complete(const PromptRequest& request);

  [[nodiscard]] const BackendConfig& config() const noexcept { return config_; }
  [[nodiscard]] std::size_t calls() const noexcept { return calls_.load(); }
  [[nodiscard]] std::size_t calls_for(Purpose p) const noexcept;

 private:
  Completion complete_http(const PromptRequest& request, const std::string& digest);
  std::string resolve_api_key() const;

  BackendConfig config_;
  std::shared_ptr<Transport> transport_;
  std::atomic<std::size_t> calls_{0};
  std::array<std::atomic<std::size_t>, kPurposeCount> per_purpose_{};
  std::mutex fixture_mutex_;
};

/// One-shot convenience over a temporary Gateway.
Completion complete(const PromptRequest& request, const BackendConfig& config);

}  // namespace xform
