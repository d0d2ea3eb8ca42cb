#include "xform/llm/prompt_catalog.hpp"

#include "xform/error.hpp"
#include "xform/table/csv.hpp"
#include "xform/table/numeric_text.hpp"

namespace xform {

PromptCatalog PromptCatalog::parse(std::string_view text) {
  PromptCatalog cat;
  std::string* current = nullptr;
  auto finish = [&] {
    if (current == nullptr) return;
    while (!current->empty() && (current->back() == '\n' || current->back() == '\r')) current->pop_back();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (line.starts_with("@@")) {
      finish();
      const std::string name(trim(line.substr(2)));
      if (name.empty()) throw Error(ErrorCode::InvalidConfig, "prompt catalog: section without a name");
      auto [it, fresh] = cat.sections_.emplace(name, std::string());
      if (!fresh) throw Error(ErrorCode::InvalidConfig, "prompt catalog: duplicate section '" + name + "'");
      current = &it->second;
    } else if (current != nullptr) {
      current->append(line);
      current->push_back('\n');
    }
    if (nl == text.size()) break;
    pos = nl + 1;
  }
  finish();
  return cat;
}

PromptCatalog PromptCatalog::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

const PromptCatalog& PromptCatalog::builtin() {
  static const PromptCatalog cat = parse(builtin_catalog_text());
  return cat;
}

bool PromptCatalog::has(std::string_view name) const { return sections_.find(name) != sections_.end(); }

const std::string& PromptCatalog::get(std::string_view name) const {
  auto it = sections_.find(name);
  if (it == sections_.end()) throw Error(ErrorCode::InvalidConfig, "prompt catalog has no section '" + std::string(name) + "'");
  return it->second;
}

std::string PromptCatalog::render(std::string_view name, const std::map<std::string, std::string>& vars) const {
  const std::string& tpl = get(name);
  std::string out;
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    const auto open = tpl.find("{{", pos);
    if (open == std::string::npos) break;
    const auto close = tpl.find("}}", open + 2);
    if (close == std::string::npos) break;
    out.append(tpl, pos, open - pos);
    const std::string var = tpl.substr(open + 2, close - open - 2);
    auto it = vars.find(var);
    if (it == vars.end()) {
      throw Error(ErrorCode::InvalidConfig, "prompt '" + std::string(name) + "' needs variable '" + var + "'");
    }
    out += it->second;
    pos = close + 2;
  }
  out.append(tpl, pos);
  return out;
}

}  // namespace xform
