#include "xform/codegen/codegen.hpp"

#include "xform/lang/builtins.hpp"
#include "xform/lang/checker.hpp"
#include "xform/table/numeric_text.hpp"
#include "xform/table/serialize.hpp"

namespace xform {

namespace {

std::string_view strip_wrappers(std::string_view s) {
  s = trim(s);
  bool changed = true;
  while (changed && s.size() >= 2) {
    changed = false;
    const char a = s.front();
    const char b = s.back();
    if ((a == '"' && b == '"') || (a == '\'' && b == '\'') || (a == '[' && b == ']') || (a == '`' && b == '`') ||
        (a == '*' && b == '*')) {
      s = trim(s.substr(1, s.size() - 2));
      changed = true;
    }
  }
  return s;
}

bool starts_with_icase(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const char c = s[i] >= 'A' && s[i] <= 'Z' ? static_cast<char>(s[i] + 32) : s[i];
    if (c != prefix[i]) return false;
  }
  return true;
}

}  // namespace

std::optional<RelationshipTag> parse_relationship_tag(std::string_view completion) {
  std::size_t pos = 0;
  while (pos <= completion.size()) {
    auto nl = completion.find('\n', pos);
    if (nl == std::string_view::npos) nl = completion.size();
    std::string_view line = trim(completion.substr(pos, nl - pos));
    pos = nl + 1;
    if (starts_with_icase(line, "relationship:")) line = trim(line.substr(13));
    line = strip_wrappers(line);
    const auto cut = line.rfind(" to ");
    if (cut != std::string_view::npos) {
      RelationshipTag tag{std::string(strip_wrappers(line.substr(0, cut))), std::string(strip_wrappers(line.substr(cut + 4)))};
      if (!tag.source_type.empty() && !tag.target_type.empty()) return tag;
    }
    if (nl == completion.size()) break;
  }
  return std::nullopt;
}

std::string extract_code(std::string_view completion) {
  const auto open = completion.find("```");
  if (open != std::string_view::npos) {
    auto body_start = completion.find('\n', open);
    if (body_start != std::string_view::npos) {
      ++body_start;
      const auto close = completion.find("```", body_start);
      const auto end = close == std::string_view::npos ? completion.size() : close;
      return std::string(trim(completion.substr(body_start, end - body_start)));
    }
  }
  return std::string(trim(completion));
}

std::string builtin_reference() {
  std::string out;
  for (const auto& b : lang::all_builtins()) {
    out += "  ";
    out += b.signature;
    out += '\n';
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::size_t count_passing(const TransformProgram& program, std::span<const ExamplePair> examples,
                          const lang::EvalLimits& limits) {
  std::size_t pass = 0;
  for (const auto& ex : examples) {
    try {
      if (evaluate(program, ex.source, limits).raw() == ex.target.raw()) ++pass;
    } catch (const Error&) {
    }
  }
  return pass;
}

namespace {

PromptRequest codegen_request(std::string user_text, Purpose purpose, const PromptCatalog& catalog) {
  PromptRequest req;
  req.purpose = purpose;
  req.system_text = catalog.get("codegen.system");
  req.user_text = std::move(user_text);
  return req;
}

std::string failing_examples(const TransformProgram& program, std::span<const ExamplePair> examples,
                             const lang::EvalLimits& limits) {
  std::string out;
  for (const auto& ex : examples) {
    std::string got;
    try {
      got = evaluate(program, ex.source, limits).raw();
      if (got == ex.target.raw()) continue;
      got = "\"" + got + "\"";
    } catch (const Error& e) {
      got = e.what();
    }
    out += "Input: " + ex.source.raw() + ", Expected output: " + ex.target.raw() + ", Got: " + got + "\n";
  }
  return out;
}

SynthesisOutcome synthesize(std::span<const ExamplePair> examples, const PromptRequest& first, Gateway& gateway,
                            const PromptCatalog& catalog, const CodegenOptions& options, ProgramOrigin origin) {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "code generation needs at least one example");
  SynthesisOutcome out;
  out.example_total = examples.size();
  PromptRequest req = first;
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    out.attempts = attempt;
    const std::string code = extract_code(gateway.complete(req).text);
    std::string problems;
    try {
      TransformProgram program = parse_program(code, origin);
      const lang::Diagnostics diags = check_program(program);
      if (diags.has_errors()) {
        problems = diags.render();
      } else {
        const std::size_t pass = count_passing(program, examples, options.limits);
        if (!options.strict || pass == examples.size()) {
          out.program = std::move(program);
          out.example_pass_count = pass;
          return out;
        }
        problems = "Some test cases fail:\n" + failing_examples(program, examples, options.limits);
      }
    } catch (const lang::LangError& e) {
      problems = std::string(e.what()) + "\n";
    }
    out.rejected.push_back(problems);
    req.user_text = catalog.render("codegen.repair", {{"request", first.user_text}, {"program", code}, {"diagnostics", problems}});
  }
  std::string all;
  for (std::size_t i = 0; i < out.rejected.size(); ++i) {
    all += "attempt " + std::to_string(i + 1) + ": " + out.rejected[i];
  }
  throw Error(ErrorCode::SynthesisFailed, "no usable program after " + std::to_string(options.max_attempts) +
                                              " attempts\n" + all);
}

}  // namespace

PromptRequest build_string_prompt(std::span<const ExamplePair> examples, const PromptCatalog& catalog) {
  return codegen_request(catalog.render("codegen.string.user", {{"grammar", catalog.get("grammar")},
                                                                {"builtins", builtin_reference()},
                                                                {"testcases", format_testcases(examples)}}),
                         Purpose::StringGen, catalog);
}

PromptRequest build_algorithmic_prompt(std::span<const ExamplePair> examples, const RelationshipTag& tag,
                                       const PromptCatalog& catalog) {
  return codegen_request(catalog.render("codegen.algorithmic.user", {{"tag", tag.rendered()},
                                                                     {"grammar", catalog.get("grammar")},
                                                                     {"builtins", builtin_reference()},
                                                                     {"testcases", format_testcases(examples)}}),
                         Purpose::AlgoGen, catalog);
}

SynthesisOutcome generate_string_transform(std::span<const ExamplePair> examples, Gateway& gateway,
                                           const PromptCatalog& catalog, const CodegenOptions& options) {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "code generation needs at least one example");
  return synthesize(examples, build_string_prompt(examples, catalog), gateway, catalog, options, ProgramOrigin::StringGen);
}

SynthesisOutcome generate_algorithmic_transform(std::span<const ExamplePair> examples, const RelationshipTag& tag,
                                                Gateway& gateway, const PromptCatalog& catalog,
                                                const CodegenOptions& options) {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "code generation needs at least one example");
  return synthesize(examples, build_algorithmic_prompt(examples, tag, catalog), gateway, catalog, options,
                    ProgramOrigin::AlgoGen);
}

RelationshipTag request_tag(std::span<const ExamplePair> examples, Gateway& gateway, std::string_view user_template,
                            Purpose purpose, const PromptCatalog& catalog, const CodegenOptions& options) {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "relationship tagging needs at least one example");
  const std::string data = serialize_examples(examples, options.max_serialized_chars, options.seed);
  PromptRequest req;
  req.purpose = purpose;
  req.system_text = catalog.get("relationship.system");
  req.user_text = catalog.render(user_template, {{"examples", data}});
  req.max_output_chars = 300;
  const Completion first = gateway.complete(req);
  if (auto tag = parse_relationship_tag(first.text)) return *tag;
  req.user_text = catalog.render("relationship.reask", {{"examples", data}});
  const Completion second = gateway.complete(req);
  if (auto tag = parse_relationship_tag(second.text)) return *tag;
  throw Error(ErrorCode::UnparsableTag, "no \" to \" relationship in completions: \"" + first.text + "\" / \"" +
                                            second.text + "\"");
}

RelationshipTag tag_relationship(std::span<const ExamplePair> examples, Gateway& gateway,
                                 const PromptCatalog& catalog, const CodegenOptions& options) {
  return request_tag(examples, gateway, "relationship.user", Purpose::RelTag, catalog, options);
}

}  // namespace xform
