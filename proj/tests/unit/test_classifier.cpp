#include <doctest.h>

#include "helpers.hpp"
#include "xform/classify/classifier.hpp"
#include "xform/table/serialize.hpp"

using namespace xform;

namespace {

ExampleSet set_of(std::vector<ExamplePair> pairs) {
  ExampleSet s;
  s.examples = std::move(pairs);
  return s;
}

}  // namespace

TEST_SUITE("classifier") {

TEST_CASE("numeric precheck") {
  CHECK(numeric_precheck(std::vector<ExamplePair>{{"2", "0.9"}, {"51.5", "23.4"}}) == TransformClass::Numbers);
  CHECK_FALSE(numeric_precheck(std::vector<ExamplePair>{{"0123", "Springfield"}}).has_value());
  CHECK_FALSE(numeric_precheck(std::vector<ExamplePair>{{"00501", "Holtsville"}}).has_value());
  CHECK_FALSE(numeric_precheck(std::vector<ExamplePair>{{"00501", "501"}}).has_value());
  CHECK_FALSE(numeric_precheck(std::vector<ExamplePair>{{"1010", "a"}, {"100000", "20"}}).has_value());
  CHECK_FALSE(numeric_precheck(std::vector<ExamplePair>{}).has_value());
  CHECK(numeric_precheck(std::vector<ExamplePair>{{"0", "32"}, {"-40", "-40"}, {"0.5", "0.25"}}) ==
        TransformClass::Numbers);
}

TEST_CASE("zero padding heuristic") {
  CHECK(is_zero_padded("007"));
  CHECK(is_zero_padded(" -0123"));
  CHECK_FALSE(is_zero_padded("0"));
  CHECK_FALSE(is_zero_padded("0.5"));
  CHECK_FALSE(is_zero_padded("100"));
}

TEST_CASE("prompt structure") {
  const std::vector<ExamplePair> ceo{{"Microsoft", "Satya Nadella"}, {"PepsiCo", "Ramon Laguarta"}};
  const auto a = build_classifier_prompt(ceo);
  const auto b = build_classifier_prompt(ceo);
  CHECK(a.user_text == b.user_text);
  CHECK(a.system_text == b.system_text);
  CHECK(a.purpose == Purpose::Classify);
  const std::string all = a.system_text + a.user_text;
  for (const char* name : {"String", "Numbers", "Algorithmic", "General"}) CHECK(all.find(name) != std::string::npos);
  CHECK(a.user_text.find(serialize_examples(ceo, 4000, 0)) != std::string::npos);
}

TEST_CASE("label parsing takes the earliest class keyword") {
  CHECK(parse_class_label("Numbers") == TransformClass::Numbers);
  CHECK(parse_class_label("  general\n") == TransformClass::General);
  CHECK(parse_class_label("Class: Algorithmic (not String)") == TransformClass::Algorithmic);
  CHECK(parse_class_label("This is a string transformation.") == TransformClass::String);
  CHECK_FALSE(parse_class_label("I am not sure").has_value());
  CHECK_FALSE(parse_class_label("").has_value());
}

TEST_CASE("classification through the model") {
  struct Case {
    std::vector<ExamplePair> pairs;
    const char* answer;
    TransformClass expected;
  };
  const std::vector<Case> cases{
      {{{"Nadia Ralph Allen", "n.r.allen"}, {"Sean Morse", "s.morse"}}, "String", TransformClass::String},
      {{{"Microsoft", "Satya Nadella"}}, "General", TransformClass::General},
      {{{"2024/09/05", "1403/06/16"}}, "Algorithmic", TransformClass::Algorithmic},
  };
  for (const auto& c : cases) {
    auto t = std::make_shared<testing::ScriptedTransport>();
    t->add(Purpose::Classify, c.answer);
    auto gw = testing::scripted_gateway(t);
    const auto d = classify(set_of(c.pairs), gw);
    CHECK(d.cls == c.expected);
    CHECK(d.source == DecisionSource::LlmLabel);
    CHECK(t->posts() == 1);
  }
}

TEST_CASE("numeric tables never reach the model") {
  auto t = std::make_shared<testing::ScriptedTransport>();
  auto gw = testing::scripted_gateway(t);
  const auto d = classify(set_of({{"2", "0.9"}, {"51.5", "23.4"}}), gw);
  CHECK(d.cls == TransformClass::Numbers);
  CHECK(d.source == DecisionSource::NumericPrecheck);
  CHECK(t->posts() == 0);
}

TEST_CASE("override wins") {
  auto t = std::make_shared<testing::ScriptedTransport>();
  auto gw = testing::scripted_gateway(t);
  const auto d = classify(set_of({{"2", "0.9"}}), gw, TransformClass::String);
  CHECK(d.cls == TransformClass::String);
  CHECK(d.source == DecisionSource::UserOverride);
  CHECK(t->posts() == 0);
}

TEST_CASE("one re-ask then a typed error") {
  auto t = std::make_shared<testing::ScriptedTransport>();
  t->add(Purpose::Classify, "hmm");
  t->add(Purpose::Classify, "General");
  auto gw = testing::scripted_gateway(t);
  CHECK(classify(set_of({{"Toyota", "Koji Sato"}}), gw).cls == TransformClass::General);
  CHECK(t->posts() == 2);

  auto never = std::make_shared<testing::ScriptedTransport>();
  never->add(Purpose::Classify, "no idea");
  auto gw2 = testing::scripted_gateway(never);
  CHECK(testing::error_of([&] { classify(set_of({{"Toyota", "Koji Sato"}}), gw2); }) == ErrorCode::UnparsableLabel);
  CHECK(never->posts() == 2);
}

TEST_CASE("empty example set") {
  auto t = std::make_shared<testing::ScriptedTransport>();
  auto gw = testing::scripted_gateway(t);
  CHECK(testing::error_of([&] { classify(ExampleSet{}, gw); }) == ErrorCode::EmptyExamples);
}

TEST_CASE("result is always one of the four classes") {
  const std::vector<std::string> answers{"String", "numbers!", "ALGORITHMIC", "general knowledge", "x", ""};
  for (const auto& a : answers) {
    auto t = std::make_shared<testing::ScriptedTransport>();
    t->add(Purpose::Classify, a);
    auto gw = testing::scripted_gateway(t);
    try {
      const auto d = classify(set_of({{"a", "b"}}), gw);
      CHECK(parse_transform_class(to_string(d.cls)).has_value());
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnparsableLabel);
    }
  }
}

}
