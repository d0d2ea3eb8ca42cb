#pragma once

#include <cstdlib>
#include <memory>
#include <optional>

#include "scripted_transport.hpp"
#include "xform/error.hpp"
#include "xform/llm/gateway.hpp"

namespace xform::testing {

/// Code of the xform::Error thrown by `fn`, or nothing when it returns normally.
template <typename F>
std::optional<ErrorCode> error_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Http-mode config whose only network is the transport handed to the Gateway.
inline BackendConfig scripted_config() {
  ::setenv("XFORM_SCRIPTED_KEY", "scripted", 1);
  BackendConfig c;
  c.mode = BackendMode::Http;
  c.model_name = "scripted";
  c.api_key_env = "XFORM_SCRIPTED_KEY";
  c.max_retries = 0;
  return c;
}

inline Gateway scripted_gateway(std::shared_ptr<ScriptedTransport> t) { return Gateway(scripted_config(), std::move(t)); }

}  // namespace xform::testing
