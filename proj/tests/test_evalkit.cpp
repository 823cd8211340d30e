// Copyright 2026 The Stage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stage/evalkit.hpp"

#include <random>

#include "doctest.h"
#include "stage/grammar.hpp"

using namespace stage;

namespace {

const Lexicon& lex() { return Grammar::builtin().lexicon(); }

MatchVerdict match(const std::string& gold, const std::string& sys) {
  static const std::set<std::string> whitelist = meaning_preserving_words(lex());
  return relaxed_match(gold, sys, lex(), whitelist);
}

}  // namespace

TEST_CASE("relaxed match verdicts") {
  CHECK(match("Monday", "the Monday") == MatchVerdict::kExtendedMatch);
  CHECK(match("December", "in December") == MatchVerdict::kExtendedMatch);
  CHECK(match("Monday", "Monday") == MatchVerdict::kExactMatch);
  CHECK(match("Monday", "Tuesday") == MatchVerdict::kMiss);
  CHECK(match("the day", "later in the day") == MatchVerdict::kExtendedMatch);
  CHECK(match("four hours", "within four hours") == MatchVerdict::kExtendedMatch);
  // a content word breaks the extension
  CHECK(match("Monday", "said Monday") == MatchVerdict::kMiss);
  // gold must appear contiguously
  CHECK(match("three days", "three whole days") == MatchVerdict::kMiss);
  // casing and punctuation do not matter
  CHECK(match("monday", "Monday.") == MatchVerdict::kExactMatch);
}

TEST_CASE("relaxed match identity property") {
  std::mt19937 rng(53);
  std::vector<std::string> words = {"three", "days", "ago", "in", "December", "Monday", "hello"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      if (!text.empty()) text += ' ';
      text += words[rng() % words.size()];
    }
    CHECK(match(text, text) == MatchVerdict::kExactMatch);
  }
}

TEST_CASE("extraction report counts exact and extended matches") {
  Document doc;
  doc.doc_id = "d1";
  doc.text = "We met three days ago sometime in December";
  doc.gold_timex = {{7, 21}, {34, 42}};  // "three days ago", "December"
  validate_document(doc);

  std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> system;
  SUBCASE("identical spans are all exact") {
    system["d1"] = {{7, 21}, {34, 42}};
    ExtractionReport report = extraction_report({doc}, system, lex());
    CHECK(report.gold_count == 2);
    CHECK(report.exact == 2);
    CHECK(report.extended == 0);
    CHECK(report.match_rate() == doctest::Approx(1.0));
    CHECK(report.extended_rate() == doctest::Approx(0.0));
  }
  SUBCASE("longer spans with function words are extended") {
    system["d1"] = {{7, 21}, {22, 42}};  // "sometime in December"
    ExtractionReport report = extraction_report({doc}, system, lex());
    CHECK(report.exact == 1);
    CHECK(report.extended == 1);
    CHECK(report.match_rate() == doctest::Approx(1.0));
    CHECK(report.extended_rate() == doctest::Approx(0.5));
  }
  SUBCASE("no system spans means misses") {
    ExtractionReport report = extraction_report({doc}, system, lex());
    CHECK(report.exact + report.extended == 0);
    CHECK(report.match_rate() == doctest::Approx(0.0));
  }
}

TEST_CASE("ordering metrics") {
  std::vector<TlinkRecord> gold = {{"A", "B", RelationLabel::kBefore},
                                   {"B", "C", RelationLabel::kAfter}};
  SUBCASE("perfect prediction") {
    OrderingMetrics m = ordering_metrics(gold, gold);
    CHECK(m.precision == doctest::Approx(1.0));
    CHECK(m.recall == doctest::Approx(1.0));
    CHECK(m.f1 == doctest::Approx(1.0));
  }
  SUBCASE("half right") {
    std::vector<TlinkRecord> pred = {{"A", "B", RelationLabel::kBefore},
                                     {"B", "C", RelationLabel::kBefore}};
    OrderingMetrics m = ordering_metrics(pred, gold);
    CHECK(m.precision == doctest::Approx(0.5));
    CHECK(m.recall == doctest::Approx(0.5));
    CHECK(m.f1 == doctest::Approx(0.5));
  }
  SUBCASE("orientation is normalized") {
    std::vector<TlinkRecord> pred = {{"B", "A", RelationLabel::kAfter},
                                     {"C", "B", RelationLabel::kBefore}};
    OrderingMetrics m = ordering_metrics(pred, gold);
    CHECK(m.correct == 2);
  }
  SUBCASE("empty gold warns") {
    OrderingMetrics m = ordering_metrics(gold, {});
    CHECK(m.empty_gold_warning);
    CHECK(m.recall == doctest::Approx(0.0));
    CHECK(m.f1 == doctest::Approx(0.0));
  }
}

TEST_CASE("f1 is the harmonic mean when both rates are nonzero") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    int gold_n = 1 + static_cast<int>(rng() % 6);
    std::vector<TlinkRecord> gold, pred;
    for (int i = 0; i < gold_n; ++i) {
      std::string a = "e" + std::to_string(i);
      std::string b = "e" + std::to_string(i + 1 + gold_n);
      RelationLabel r = rng() % 2 == 0 ? RelationLabel::kBefore : RelationLabel::kAfter;
      gold.push_back({a, b, r});
      pred.push_back({a, b, rng() % 2 == 0 ? r : relation_inverse(r)});
      if (rng() % 3 == 0) pred.push_back({a, "x" + std::to_string(i), RelationLabel::kBefore});
    }
    OrderingMetrics m = ordering_metrics(pred, gold);
    if (m.precision > 0 && m.recall > 0) {
      double harmonic = 2 * m.precision * m.recall / (m.precision + m.recall);
      CHECK(std::abs(m.f1 - harmonic) < 1e-9);
    }
  }
}

TEST_CASE("document validation catches bad spans and ids") {
  Document doc;
  doc.doc_id = "d";
  doc.text = "short";
  doc.events.push_back({"e1", {0, 99}, std::nullopt});
  CHECK_THROWS_AS(validate_document(doc), std::invalid_argument);
  doc.events[0].span = {0, 2};
  doc.events.push_back({"e1", {0, 2}, std::nullopt});
  CHECK_THROWS_AS(validate_document(doc), std::invalid_argument);
  doc.events.pop_back();
  doc.gold_tlinks.push_back({"e1", "missing", RelationLabel::kBefore});
  CHECK_THROWS_AS(validate_document(doc), std::invalid_argument);
}
