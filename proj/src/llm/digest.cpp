#include <openssl/evp.h>

#include <array>
#include <memory>

#include "xform/error.hpp"
#include "xform/llm/gateway.hpp"
#include "xform/table/numeric_text.hpp"

namespace xform {

std::string request_digest(const PromptRequest& request) {
  std::string canonical = "xform-prompt-v1\n";
  canonical += to_string(request.purpose);
  canonical += '\n';
  canonical += format_shortest(request.temperature);
  canonical += '\n';
  canonical += std::to_string(request.system_text.size()) + ':' + request.system_text + '\n';
  canonical += std::to_string(request.user_text.size()) + ':' + request.user_text;

  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int md_len = 0;
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), canonical.data(), canonical.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &md_len) != 1) {
    throw Error(ErrorCode::InvalidConfig, "sha256 unavailable");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(md_len * 2);
  for (unsigned int i = 0; i < md_len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

}  // namespace xform
