#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "xform/join/join.hpp"

using namespace xform;

namespace {

Column column(std::initializer_list<const char*> values) {
  Column c;
  for (const char* v : values) c.emplace_back(v);
  return c;
}

ExampleSet table(Column source, Column target) {
  ExampleSet s;
  s.examples = {{source.at(0).raw(), target.at(0).raw()}};
  s.source_column = std::move(source);
  s.target_column = std::move(target);
  return s;
}

MatchOptions mode(MatchMode m) {
  MatchOptions o;
  o.mode = m;
  return o;
}

}  // namespace

TEST_SUITE("join") {

TEST_CASE("edit distance basics") {
  CHECK(edit_distance("kitten", "sitting") == 3);
  CHECK(edit_distance("", "abc") == 3);
  CHECK(edit_distance("abc", "") == 3);
  CHECK(edit_distance("flaw", "lawn") == 2);
  CHECK(edit_distance("Satya Nadela", "Satya Nadella") == 1);
  CHECK(edit_distance("\xc3\xa9t\xc3\xa9", "ete") == 2);
  CHECK(edit_distance(U"\U0001F600", U"") == 1);
  CHECK(normalized_edit_distance("Satya Nadela", "Satya Nadella") == doctest::Approx(1.0 / 13.0));
  CHECK(normalized_edit_distance("x", "") == 1.0);
}

TEST_CASE("edit distance equals the DP oracle on short strings") {
  const auto words = testing::all_strings("abc", 5);
  REQUIRE(words.size() == 364);
  std::size_t mismatches = 0;
  for (const auto& a : words) {
    for (const auto& b : words) {
      if (edit_distance(a, b) != testing::dp_edit_distance(a, b)) ++mismatches;
    }
  }
  CHECK(mismatches == 0);

  testing::Lcg rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto a = rng.word("abc", 12);
    const auto b = rng.word("abc", 12);
    REQUIRE(edit_distance(a, b) == testing::dp_edit_distance(a, b));
  }
}

TEST_CASE("edit distance is a metric") {
  testing::Lcg rng(11);
  for (int i = 0; i < 3000; ++i) {
    const auto a = rng.word("abcd", 10);
    const auto b = rng.word("abcd", 10);
    const auto c = rng.word("abcd", 10);
    const auto ab = edit_distance(a, b);
    CHECK(ab == edit_distance(b, a));
    CHECK((ab == 0) == (a == b));
    CHECK(edit_distance(a, c) <= ab + edit_distance(b, c));
  }
}

TEST_CASE("match one") {
  const auto users = column({"n.r.allen", "s.morse", "d.c.griffith", "b.constable"});
  const auto m = match_one(CellValue("s.morse"), users, mode(MatchMode::EditDistance));
  REQUIRE(m.has_value());
  CHECK(m->index == 1);
  CHECK(m->distance == 0);

  const auto nums = column({"0.9", "23.4", "33.1"});
  const auto n = match_one(CellValue("33.12"), nums, mode(MatchMode::NumericDistance));
  REQUIRE(n.has_value());
  CHECK(n->index == 2);
  CHECK(n->distance == doctest::Approx(0.02).epsilon(1e-9));

  CHECK_FALSE(match_one(CellValue("zzz"), users, mode(MatchMode::Exact)).has_value());
  const auto exact = match_one(CellValue("b.constable"), users, mode(MatchMode::Exact));
  REQUIRE(exact.has_value());
  CHECK(exact->index == 3);
  CHECK(exact->distance == 0);

  const auto tie = match_one(CellValue("ab"), column({"ax", "ay", "ab "}), mode(MatchMode::EditDistance));
  REQUIRE(tie.has_value());
  CHECK(tie->index == 0);

  auto bounded = mode(MatchMode::EditDistance);
  bounded.max_distance = 1;
  CHECK_FALSE(match_one(CellValue("zzzz"), users, bounded).has_value());
  bounded.min_distance = 3;
  CHECK(match_one(CellValue("s.morse"), users, bounded).has_value());

  CHECK(testing::error_of([&] { match_one(CellValue("abc"), nums, mode(MatchMode::NumericDistance)); }) ==
        ErrorCode::NonNumericPrediction);
  const auto mixed = column({"n/a", "10"});
  const auto skip = match_one(CellValue("9"), mixed, mode(MatchMode::NumericDistance));
  REQUIRE(skip.has_value());
  CHECK(skip->index == 1);
}

TEST_CASE("perfect predictions") {
  const auto set = table(column({"a", "b", "c"}), column({"A", "B", "C"}));
  const std::vector<std::optional<CellValue>> preds{CellValue("A"), CellValue("B"), CellValue("C")};
  for (auto m : {MatchMode::Exact, MatchMode::EditDistance}) {
    const auto r = join(set, preds, mode(m), positional_gold(set), TransformClass::String);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 1.0);
    CHECK(r.f1 == 1.0);
    CHECK(r.aed == 0.0);
    CHECK(r.aned == 0.0);
  }
}

TEST_CASE("a missing prediction costs recall only") {
  const auto set = table(column({"a", "b", "c"}), column({"A", "B", "C"}));
  const std::vector<std::optional<CellValue>> preds{CellValue("A"), CellValue("B"), std::nullopt};
  const auto r = join(set, preds, mode(MatchMode::EditDistance), positional_gold(set), TransformClass::String);
  CHECK(r.precision == 1.0);
  CHECK(r.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.f1 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(r.rows[2].note == "no prediction");
  CHECK(r.predicted == 2);
}

TEST_CASE("wrong matches cost precision") {
  const auto set = table(column({"a", "b", "c", "d"}), column({"Ax", "By", "Cz", "Dw"}));
  const std::vector<std::optional<CellValue>> preds{CellValue("Ax"), CellValue("Byy"), CellValue("Dw"),
                                                    CellValue("Dw")};
  const auto r = join(set, preds, mode(MatchMode::EditDistance), positional_gold(set), TransformClass::String);
  CHECK(r.matched == 4);
  CHECK(r.correct == 3);
  CHECK(r.precision == 0.75);
  CHECK(r.recall == 0.75);
  CHECK(r.aed == doctest::Approx((0 + 1 + 2 + 0) / 4.0));
  CHECK(r.aned == doctest::Approx((0 + 0.5 + 1.0 + 0) / 4.0));
  CHECK(r.rows[2].matched_index == 3u);

  const auto ex = join(set, preds, mode(MatchMode::Exact), positional_gold(set), TransformClass::String);
  CHECK(ex.matched == 3);
  CHECK(ex.correct == 2);
  CHECK(ex.f1 <= r.f1);
}

TEST_CASE("gold from pairs follows source text") {
  const auto set = table(column({"a", "b"}), column({"B", "A"}));
  const std::vector<ExamplePair> pairs{{"b", "B"}, {"a", "A"}};
  const auto gold = gold_from_pairs(set.source_column, pairs);
  REQUIRE(gold.size() == 2);
  CHECK(gold[0] == "A");
  CHECK(gold[1] == "B");
  const std::vector<std::optional<CellValue>> preds{CellValue("A"), CellValue("B")};
  CHECK(join(set, preds, mode(MatchMode::Exact), gold, TransformClass::String).f1 == 1.0);
  CHECK(join(set, preds, mode(MatchMode::Exact), positional_gold(set), TransformClass::String).f1 == 0.0);
}

TEST_CASE("argument checks") {
  const auto set = table(column({"a", "b"}), column({"A", "B"}));
  const std::vector<std::optional<CellValue>> one{CellValue("A")};
  CHECK(testing::error_of([&] { join(set, one, mode(MatchMode::Exact), positional_gold(set), TransformClass::String); }) ==
        ErrorCode::ArityMismatch);
  const std::vector<std::optional<CellValue>> two{CellValue("1"), CellValue("2")};
  CHECK(testing::error_of([&] {
          join(set, two, mode(MatchMode::NumericDistance), positional_gold(set), TransformClass::String);
        }) == ErrorCode::InvalidConfig);
  auto no_target = set;
  no_target.target_column.reset();
  CHECK(testing::error_of([&] {
          join(no_target, two, mode(MatchMode::Exact), GoldAlignment(2), TransformClass::String);
        }) == ErrorCode::ArityMismatch);
}

TEST_CASE("numeric join on the weight table") {
  const auto set = table(column({"2", "51.5", "73"}), column({"0.9", "23.4", "33.1"}));
  const std::vector<std::optional<CellValue>> preds{CellValue("0.9"), CellValue("abc"), CellValue("33.12")};
  const auto r = join(set, preds, mode(MatchMode::NumericDistance), positional_gold(set), TransformClass::Numbers);
  CHECK(r.matched == 2);
  CHECK(r.correct == 2);
  CHECK(r.rows[1].note.find("NonNumericPrediction") != std::string::npos);
  CHECK(r.rows[2].distance == doctest::Approx(0.02));
}

TEST_CASE("f1 agrees with precision and recall") {
  testing::Lcg rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    Column source;
    Column target;
    std::vector<std::optional<CellValue>> preds;
    const std::size_t n = 1 + rng.below(8);
    for (std::size_t i = 0; i < n; ++i) {
      source.emplace_back("s" + std::to_string(i));
      target.emplace_back(rng.word("ab", 3));
      if (rng.below(4) == 0) {
        preds.emplace_back(std::nullopt);
      } else {
        preds.emplace_back(CellValue(rng.word("ab", 3)));
      }
    }
    const auto set = table(source, target);
    for (auto m : {MatchMode::Exact, MatchMode::EditDistance}) {
      const auto r = join(set, preds, mode(m), positional_gold(set), TransformClass::String);
      const double expect = r.precision + r.recall == 0 ? 0.0 : 2 * r.precision * r.recall / (r.precision + r.recall);
      CHECK(std::abs(r.f1 - expect) <= 1e-12);
      CHECK(r.precision >= 0.0);
      CHECK(r.precision <= 1.0);
      CHECK(r.recall <= 1.0);
      for (const auto& row : r.rows) {
        if (row.matched_target) CHECK(row.prediction.has_value());
        if (m == MatchMode::Exact && row.distance) CHECK(*row.distance == 0.0);
      }
    }
  }
}

}
