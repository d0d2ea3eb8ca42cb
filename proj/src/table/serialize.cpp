#include "xform/table/serialize.hpp"

#include <algorithm>

#include "xform/error.hpp"
#include "xform/table/sampling.hpp"

namespace xform {
namespace {

constexpr std::string_view kSeparator = ", ";

void append_quoted(std::string& out, std::string_view value) {
  out.push_back('"');
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace

std::string serialize_pair(const ExamplePair& pair) {
  std::string out = "(";
  append_quoted(out, pair.source.raw());
  out += " -> ";
  append_quoted(out, pair.target.raw());
  out += ")";
  return out;
}

std::vector<std::size_t> sample_for_budget(std::span<const ExamplePair> examples, std::size_t max_chars,
                                           std::uint64_t seed) {
  std::vector<std::size_t> lengths;
  lengths.reserve(examples.size());
  std::size_t total = 0;
  for (const auto& e : examples) {
    lengths.push_back(serialize_pair(e).size());
    total += lengths.back();
  }
  if (!examples.empty()) total += kSeparator.size() * (examples.size() - 1);

  std::vector<std::size_t> chosen;
  if (total <= max_chars) {
    chosen.resize(examples.size());
    for (std::size_t i = 0; i < chosen.size(); ++i) chosen[i] = i;
    return chosen;
  }
  std::size_t used = 0;
  for (std::size_t i : seeded_permutation(examples.size(), seed)) {
    const std::size_t extra = lengths[i] + (chosen.empty() ? 0 : kSeparator.size());
    if (used + extra <= max_chars) {
      chosen.push_back(i);
      used += extra;
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::string serialize_examples(std::span<const ExamplePair> examples, std::size_t max_chars,
                               std::uint64_t seed) {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "nothing to serialize");
  const auto chosen = sample_for_budget(examples, max_chars, seed);
  if (chosen.empty()) {
    throw Error(ErrorCode::BudgetTooSmall, "max_chars " + std::to_string(max_chars) + " fits no example pair");
  }
  std::string out;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    if (k > 0) out += kSeparator;
    out += serialize_pair(examples[chosen[k]]);
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_serialized_examples(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = 0;
  auto fail = [&](const char* what) {
    throw Error(ErrorCode::MalformedCsv, std::string(what) + " at offset " + std::to_string(i));
  };
  auto expect = [&](std::string_view lit) {
    if (text.substr(i, lit.size()) != lit) fail("unexpected text");
    i += lit.size();
  };
  auto quoted = [&] {
    expect("\"");
    std::string value;
    for (;;) {
      if (i >= text.size()) fail("unterminated quote");
      if (text[i] == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          value.push_back('"');
          i += 2;
          continue;
        }
        ++i;
        return value;
      }
      value.push_back(text[i++]);
    }
  };
  while (i < text.size()) {
    if (!out.empty()) expect(kSeparator);
    expect("(");
    std::string s = quoted();
    expect(" -> ");
    std::string t = quoted();
    expect(")");
    out.emplace_back(std::move(s), std::move(t));
  }
  return out;
}

std::string format_testcases(std::span<const ExamplePair> examples) {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "no test cases");
  std::string out;
  for (std::size_t k = 0; k < examples.size(); ++k) {
    if (k > 0) out += '\n';
    out += "Input: ";
    out += examples[k].source.raw();
    out += ", Expected output: ";
    out += examples[k].target.raw();
  }
  return out;
}

}  // namespace xform
