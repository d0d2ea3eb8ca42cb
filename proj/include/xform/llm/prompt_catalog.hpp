#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace xform {

/// Catalog text compiled into the library (prompts/catalog.txt).
std::string_view builtin_catalog_text() noexcept;

/// Named prompt templates. A section starts with a line `@@ name`; its body
/// runs to the next header with trailing blank lines removed. `{{var}}` marks
/// a placeholder.
class PromptCatalog {
 public:
  /// Throws InvalidConfig on duplicate or empty section names.
  static PromptCatalog parse(std::string_view text);
  static PromptCatalog load(const std::filesystem::path& path);
  static const PromptCatalog& builtin();

  [[nodiscard]] bool has(std::string_view name) const;
  /// Throws InvalidConfig when absent.
  [[nodiscard]] const std::string& get(std::string_view name) const;
  /// Substitutes every placeholder; an unknown variable is InvalidConfig.
  [[nodiscard]] std::string render(std::string_view name, const std::map<std::string, std::string>& vars) const;

 private:
  std::map<std::string, std::string, std::less<>> sections_;
};

}  // namespace xform
