#include "xform/join/edit_distance.hpp"

#include <algorithm>
#include <vector>

#include "xform/table/utf8.hpp"

namespace xform {

std::size_t edit_distance(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a == b) return 0;
  return edit_distance(std::u32string_view(utf8::decode(a)), std::u32string_view(utf8::decode(b)));
}

double normalized_edit_distance(std::string_view prediction, std::string_view target) {
  const auto t = utf8::decode(target);
  const auto d = edit_distance(std::u32string_view(utf8::decode(prediction)), std::u32string_view(t));
  return static_cast<double>(d) / static_cast<double>(std::max<std::size_t>(1, t.size()));
}

}  // namespace xform
