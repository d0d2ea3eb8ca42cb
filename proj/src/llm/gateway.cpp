#include "xform/llm/gateway.hpp"

#include <cstdlib>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "xform/error.hpp"
#include "xform/table/csv.hpp"

namespace xform {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, kPurposeCount> kPurposeNames = {"Classify", "StringGen", "RelTag",
                                                                       "AlgoGen",  "TypeDetect", "Lookup"};

std::size_t index_of(Purpose p) noexcept { return static_cast<std::size_t>(p); }

}  // namespace

std::string_view to_string(Purpose p) noexcept { return kPurposeNames[index_of(p)]; }

std::optional<Purpose> parse_purpose(std::string_view name) {
  for (std::size_t i = 0; i < kPurposeNames.size(); ++i) {
    if (kPurposeNames[i] == name) return static_cast<Purpose>(i);
  }
  return std::nullopt;
}

std::string_view to_string(BackendMode m) noexcept {
  switch (m) {
    case BackendMode::Http: return "http";
    case BackendMode::Replay: return "replay";
    case BackendMode::Record: return "record";
  }
  return "replay";
}

std::optional<BackendMode> parse_backend_mode(std::string_view name) {
  if (name == "http") return BackendMode::Http;
  if (name == "replay") return BackendMode::Replay;
  if (name == "record") return BackendMode::Record;
  return std::nullopt;
}

void BackendConfig::validate() const {
  const bool networked = mode == BackendMode::Http || mode == BackendMode::Record;
  const bool uses_fixtures = mode == BackendMode::Replay || mode == BackendMode::Record;
  if (networked && (endpoint.empty() || model_name.empty())) {
    throw Error(ErrorCode::InvalidConfig, std::string(to_string(mode)) + " mode needs an endpoint and a model name");
  }
  if (uses_fixtures && fixture_dir.empty()) {
    throw Error(ErrorCode::InvalidConfig, std::string(to_string(mode)) + " mode needs a fixture directory");
  }
  if (max_retries < 0) throw Error(ErrorCode::InvalidConfig, "max_retries must be non-negative");
  if (timeout.count() <= 0) throw Error(ErrorCode::InvalidConfig, "timeout must be positive");
}

std::string build_chat_body(const PromptRequest& request, const std::string& model) {
  json messages = json::array();
  if (!request.system_text.empty()) messages.push_back({{"role", "system"}, {"content", request.system_text}});
  messages.push_back({{"role", "user"}, {"content", request.user_text}});
  // Roughly four characters per token for the output cap.
  const std::size_t max_tokens = request.max_output_chars / 4 + 16;
  return json{{"model", model},
              {"messages", messages},
              {"temperature", request.temperature},
              {"max_tokens", max_tokens}}
      .dump();
}

std::string parse_chat_response(std::string_view body) {
  json parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) throw Error(ErrorCode::BadResponse, "response is not JSON");
  try {
    const auto& content = parsed.at("choices").at(0).at("message").at("content");
    return content.is_null() ? std::string{} : content.get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadResponse, std::string("unexpected response shape: ") + e.what());
  }
}

std::filesystem::path fixture_path(const std::filesystem::path& dir, std::string_view digest) {
  return dir / (std::string(digest) + ".json");
}

std::optional<FixtureRecord> read_fixture(const std::filesystem::path& dir, std::string_view digest) {
  const auto path = fixture_path(dir, digest);
  if (!std::filesystem::exists(path)) return std::nullopt;
  json j = json::parse(read_text_file(path), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::BadResponse, "fixture " + path.string() + " is not JSON");
  try {
    FixtureRecord rec;
    rec.digest = j.at("digest").get<std::string>();
    const auto purpose = parse_purpose(j.at("purpose").get<std::string>());
    if (!purpose) throw Error(ErrorCode::BadResponse, "fixture " + path.string() + " has an unknown purpose");
    rec.purpose = *purpose;
    rec.system_text = j.at("system").get<std::string>();
    rec.user_text = j.at("user").get<std::string>();
    rec.temperature = j.at("temperature").get<double>();
    rec.model = j.value("model", "");
    rec.response = j.at("response").get<std::string>();
    return rec;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadResponse, "fixture " + path.string() + ": " + e.what());
  }
}

void write_fixture(const std::filesystem::path& dir, const FixtureRecord& record) {
  std::filesystem::create_directories(dir);
  const json j = {{"digest", record.digest},         {"purpose", to_string(record.purpose)},
                  {"system", record.system_text},    {"user", record.user_text},
                  {"temperature", record.temperature}, {"model", record.model},
                  {"response", record.response}};
  const auto final_path = fixture_path(dir, record.digest);
  auto tmp = final_path;
  tmp += ".tmp";
  write_text_file(tmp, j.dump(2) + "\n");
  std::filesystem::rename(tmp, final_path);
}

Gateway::Gateway(BackendConfig config, std::shared_ptr<Transport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  config_.validate();
  if (!transport_ && config_.mode != BackendMode::Replay) transport_ = make_http_transport();
}

std::size_t Gateway::calls_for(Purpose p) const noexcept { return per_purpose_[index_of(p)].load(); }

std::string Gateway::resolve_api_key() const {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorCode::AuthMissing, "environment variable " + config_.api_key_env + " is not set");
  }
  return key;
}

Completion Gateway::complete(const PromptRequest& request) {
  if (request.user_text.empty()) throw Error(ErrorCode::InvalidConfig, "prompt user text is empty");
  const std::size_t n = ++calls_;
  if (config_.max_total_calls != 0 && n > config_.max_total_calls) {
    --calls_;
    throw Error(ErrorCode::BudgetExhausted,
                "call budget of " + std::to_string(config_.max_total_calls) + " completions is spent");
  }
  ++per_purpose_[index_of(request.purpose)];

  const std::string digest = request_digest(request);
  if (config_.mode == BackendMode::Replay) {
    auto rec = read_fixture(config_.fixture_dir, digest);
    if (!rec) {
      throw Error(ErrorCode::FixtureMiss, "no fixture " + digest + " (" + std::string(to_string(request.purpose)) +
                                              ") in " + config_.fixture_dir.string());
    }
    if (rec->user_text != request.user_text || rec->system_text != request.system_text) {
      throw Error(ErrorCode::BadResponse, "fixture " + digest + " does not match the request it is keyed by");
    }
    return Completion{std::move(rec->response), "replay", true};
  }
  return complete_http(request, digest);
}

Completion Gateway::complete_http(const PromptRequest& request, const std::string& digest) {
  const std::string key = resolve_api_key();
  HttpRequest http;
  http.url = config_.endpoint;
  http.timeout = config_.timeout;
  http.headers = {{"Authorization", "Bearer " + key},
                  {"Content-Type", "application/json"},
                  {"X-Request-Purpose", std::string(to_string(request.purpose))}};
  http.body = build_chat_body(request, config_.model_name);

  HttpResponse response;
  for (int attempt = 0;; ++attempt) {
    response = transport_->post(http);
    const bool retryable = response.timed_out || response.status == 0 || response.status == 429 ||
                           response.status >= 500;
    if (response.status == 200 || !retryable || attempt >= config_.max_retries) break;
    std::this_thread::sleep_for(config_.retry_base_delay * (1 << attempt));
  }
  if (response.timed_out) throw Error(ErrorCode::Timeout, "no response from " + config_.endpoint);
  if (response.status == 429) throw Error(ErrorCode::RateLimited, "rate limited after retries");
  if (response.status != 200) {
    const std::string detail = response.status == 0 ? response.transport_error : std::to_string(response.status);
    throw Error(ErrorCode::HttpError, "completion request failed: " + detail);
  }
  std::string text = parse_chat_response(response.body);

  if (config_.mode == BackendMode::Record) {
    const std::lock_guard lock(fixture_mutex_);
    write_fixture(config_.fixture_dir, FixtureRecord{digest, request.purpose, request.system_text, request.user_text,
                                                     request.temperature, config_.model_name, text});
    return Completion{std::move(text), "record:" + config_.model_name, false};
  }
  return Completion{std::move(text), "http:" + config_.model_name, false};
}

Completion complete(const PromptRequest& request, const BackendConfig& config) {
  Gateway gateway(config);
  return gateway.complete(request);
}

}  // namespace xform
