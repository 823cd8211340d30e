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

#include "stage/ilp.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "test_ilp_oracle.hpp"

using namespace stage;

namespace {

const std::vector<RelationLabel> kTwo = {RelationLabel::kBefore, RelationLabel::kAfter};
const std::vector<RelationLabel> kSix = {RelationLabel::kAfter,       RelationLabel::kBefore,
                                         RelationLabel::kSimultaneous, RelationLabel::kIncludes,
                                         RelationLabel::kIsIncluded,   RelationLabel::kVague};

OrderingProblem one_pair_problem() {
  OrderingProblem prob;
  prob.events = {"e1", "e2"};
  prob.relations = kTwo;
  prob.probabilities[{"e1", "e2"}] = {{RelationLabel::kBefore, Rational(7, 10)},
                                      {RelationLabel::kAfter, Rational(3, 10)}};
  prob.tc = default_transitivity_table(kTwo);
  return prob;
}

}  // namespace

TEST_CASE("objective over a single pair") {
  OrderingProblem prob = one_pair_problem();
  Assignment pick_b;
  pick_b.labels[{"e1", "e2"}] = RelationLabel::kBefore;
  CHECK(objective_score(pick_b, prob) == Rational(7, 10));

  // soft mode, parser prediction on the scored pair itself: choosing the
  // predicted label earns alpha, any other earns (1-alpha)/(|R|-1)
  prob.stage_relations[{"e1", "e2"}] = RelationLabel::kBefore;
  prob.mode = OrderingProblem::Mode::kSoft;
  CHECK(objective_score(pick_b, prob) == Rational(16, 10));  // 0.7 + 0.9
  Assignment pick_a;
  pick_a.labels[{"e1", "e2"}] = RelationLabel::kAfter;
  CHECK(objective_score(pick_a, prob) == Rational(4, 10));  // 0.3 + 0.1

  OrderingProblem empty;
  empty.relations = kTwo;
  CHECK(objective_score(Assignment{}, empty) == Rational(0));
}

TEST_CASE("objective rejects incomplete assignments") {
  OrderingProblem prob = one_pair_problem();
  CHECK_THROWS_AS(objective_score(Assignment{}, prob), std::invalid_argument);
  Assignment wrong;
  wrong.labels[{"e1", "e2"}] = RelationLabel::kBefore;
  wrong.labels[{"e2", "e1"}] = RelationLabel::kAfter;
  CHECK_THROWS_AS(objective_score(wrong, prob), std::invalid_argument);
}

TEST_CASE("transitivity forces the documented three-event flip") {
  // p(b|12)=0.9, p(b|23)=0.9, p(b|13)=0.45: the unconstrained argmax
  // (b,b,a) violates (b,b,b); the optimum is (b,b,b) at 2.25.
  OrderingProblem prob;
  prob.events = {"e1", "e2", "e3"};
  prob.relations = kTwo;
  prob.tc = default_transitivity_table(kTwo);
  auto set = [&prob](const char* s, const char* t, int before_pct) {
    prob.probabilities[{s, t}] = {
        {RelationLabel::kBefore, Rational(before_pct, 100)},
        {RelationLabel::kAfter, Rational(100 - before_pct, 100)}};
  };
  set("e1", "e2", 90);
  set("e2", "e3", 90);
  set("e1", "e3", 45);

  SolveResult result = solve(prob);
  CHECK(result.objective == Rational(9, 4));
  CHECK(result.proven_optimal);
  CHECK(result.assignment.labels.at({"e1", "e3"}) == RelationLabel::kBefore);

  // Exhaustive enumeration over all 8 assignments agrees exactly.
  auto oracle = ilptest::brute_force_best(prob);
  REQUIRE(oracle.has_value());
  CHECK(oracle->second == result.objective);
}

TEST_CASE("without transitivity the solver decouples to per-pair argmax") {
  OrderingProblem prob = one_pair_problem();
  prob.tc.clear();
  SolveResult result = solve(prob);
  CHECK(result.assignment.labels.at({"e1", "e2"}) == RelationLabel::kBefore);
  CHECK(result.objective == Rational(7, 10));
}

TEST_CASE("hard constraints force the stage relation") {
  OrderingProblem prob = one_pair_problem();
  prob.dummy_events = {"t1"};
  prob.probabilities[{"t1", "e2"}] = {{RelationLabel::kBefore, Rational(1, 100)},
                                      {RelationLabel::kAfter, Rational(99, 100)}};
  prob.stage_relations[{"t1", "e2"}] = RelationLabel::kBefore;
  prob.mode = OrderingProblem::Mode::kHard;
  SolveResult result = solve(prob);
  CHECK(result.assignment.labels.at({"t1", "e2"}) == RelationLabel::kBefore);
  auto audit = check_feasibility(result.assignment, prob);
  CHECK(audit.ok);
}

TEST_CASE("inconsistent hard constraints raise a named conflict") {
  OrderingProblem prob;
  prob.events = {"e1"};
  prob.dummy_events = {"t1", "t2"};
  prob.relations = kTwo;
  prob.tc = default_transitivity_table(kTwo);
  for (auto [s, t] : std::vector<std::pair<const char*, const char*>>{
           {"t1", "t2"}, {"t2", "e1"}, {"t1", "e1"}}) {
    prob.probabilities[{s, t}] = {{RelationLabel::kBefore, Rational(1, 2)},
                                  {RelationLabel::kAfter, Rational(1, 2)}};
  }
  prob.stage_relations[{"t1", "t2"}] = RelationLabel::kBefore;
  prob.stage_relations[{"t2", "e1"}] = RelationLabel::kBefore;
  prob.stage_relations[{"t1", "e1"}] = RelationLabel::kAfter;
  prob.mode = OrderingProblem::Mode::kHard;
  CHECK_THROWS_WITH_AS(solve(prob), doctest::Contains("t1"), InfeasibleError);
}

TEST_CASE("hinge loss basics") {
  OrderingProblem prob = one_pair_problem();
  Assignment gold;
  gold.labels[{"e1", "e2"}] = RelationLabel::kBefore;
  CHECK(hinge_loss(gold, gold, prob) == Rational(0));

  // closed form: gold b with p(b)=0.2, pred a with p(a)=0.8 -> 1.6
  OrderingProblem skewed = one_pair_problem();
  skewed.probabilities[{"e1", "e2"}] = {{RelationLabel::kBefore, Rational(2, 10)},
                                        {RelationLabel::kAfter, Rational(8, 10)}};
  Assignment pred;
  pred.labels[{"e1", "e2"}] = RelationLabel::kAfter;
  Assignment gold_b;
  gold_b.labels[{"e1", "e2"}] = RelationLabel::kBefore;
  CHECK(hinge_loss(pred, gold_b, skewed) == Rational(8, 5));

  Assignment mismatched;
  mismatched.labels[{"e2", "e1"}] = RelationLabel::kBefore;
  CHECK_THROWS_AS(hinge_loss(pred, mismatched, skewed), std::invalid_argument);
}

TEST_CASE("hinge loss equals hamming when scores tie") {
  OrderingProblem prob;
  prob.events = {"e1", "e2", "e3"};
  prob.relations = kTwo;
  for (auto [s, t] : std::vector<std::pair<const char*, const char*>>{
           {"e1", "e2"}, {"e2", "e3"}, {"e1", "e3"}}) {
    prob.probabilities[{s, t}] = {{RelationLabel::kBefore, Rational(1, 2)},
                                  {RelationLabel::kAfter, Rational(1, 2)}};
  }
  Assignment gold, pred;
  for (auto [s, t] : std::vector<std::pair<const char*, const char*>>{
           {"e1", "e2"}, {"e2", "e3"}, {"e1", "e3"}}) {
    gold.labels[{s, t}] = RelationLabel::kBefore;
    pred.labels[{s, t}] = RelationLabel::kAfter;
  }
  CHECK(hinge_loss(pred, gold, prob) == Rational(3));
}

TEST_CASE("default transitivity table contents") {
  auto table = default_transitivity_table(kSix);
  auto contains = [&table](RelationLabel a, RelationLabel b, RelationLabel c) {
    return std::find(table.begin(), table.end(), TransitivityTriple{a, b, c}) != table.end();
  };
  CHECK(contains(RelationLabel::kBefore, RelationLabel::kBefore, RelationLabel::kBefore));
  CHECK(contains(RelationLabel::kSimultaneous, RelationLabel::kSimultaneous,
                 RelationLabel::kSimultaneous));
  CHECK(contains(RelationLabel::kBefore, RelationLabel::kIncludes, RelationLabel::kBefore));
  for (const auto& t : table) {
    for (RelationLabel r : t) CHECK(r != RelationLabel::kVague);
  }
  CHECK(table.size() == 17);
  // restricting the relation set restricts the table
  CHECK(default_transitivity_table(kTwo).size() == 2);
}

TEST_CASE("shipped transitivity data matches the builtin table") {
  const char* repo_data = std::getenv("STAGE_REPO_DATA");
  std::string path = repo_data ? std::string(repo_data) + "/transitivity.tsv"
                               : "data/transitivity.tsv";
  std::ifstream in(path, std::ios::binary);
  if (!in) in.open("../data/transitivity.tsv", std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "data/transitivity.tsv not found");
  std::ostringstream buf;
  buf << in.rdbuf();
  CHECK(load_transitivity_table(buf.str()) == default_transitivity_table(kSix));
}

TEST_CASE("transitivity table file parsing") {
  auto table = load_transitivity_table("# comment\nb b b\ns b b\n");
  REQUIRE(table.size() == 2);
  CHECK(table[0] == TransitivityTriple{RelationLabel::kBefore, RelationLabel::kBefore,
                                       RelationLabel::kBefore});
  CHECK_THROWS_WITH_AS(load_transitivity_table("b b\n"), doctest::Contains("line 1"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(load_transitivity_table("b v b\n"), doctest::Contains("vague"),
                       std::invalid_argument);
}

TEST_CASE("soft dominance: uniform probabilities follow the parser") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    OrderingProblem prob = ilptest::random_problem(rng, 4, kSix, OrderingProblem::Mode::kSoft,
                                                   /*uniform=*/true,
                                                   /*consistent_stage=*/true);
    if (prob.stage_relations.empty()) continue;
    SolveResult result = solve(prob);
    for (const auto& [pair, tp] : prob.stage_relations) {
      CHECK(result.assignment.labels.at(pair) == tp);
    }
  }
}

TEST_CASE("objective decomposition isolates the soft bonus") {
  std::mt19937 rng(43);
  OrderingProblem prob;
  do {
    prob = ilptest::random_problem(rng, 4, kSix, OrderingProblem::Mode::kSoft,
                                   /*uniform=*/false);
  } while (prob.stage_relations.empty());
  OrderingProblem without = ilptest::strip_stage_pairs(prob);
  Assignment assign;
  for (const auto& pair : prob.pair_set()) assign.labels[pair] = prob.relations[0];
  Assignment reduced;
  for (const auto& pair : without.pair_set()) reduced.labels[pair] = prob.relations[0];

  Rational expected_delta(0);
  int nrel = static_cast<int>(prob.relations.size());
  for (const auto& [pair, tp] : prob.stage_relations) {
    // each stage pair adds its Eq-style bonus plus the dummy base term
    expected_delta += prob.relations[0] == tp
                          ? prob.alpha
                          : (Rational(1) - prob.alpha) / Rational(nrel - 1);
    if (!prob.probabilities.contains(pair) &&
        prob.dummy_probs == OrderingProblem::DummyProbs::kUniform)
      expected_delta += Rational(1, nrel);
  }
  CHECK(objective_score(assign, prob) - objective_score(reduced, without) == expected_delta);
}

TEST_CASE("small random problems match the exhaustive oracle") {
  std::mt19937 rng(47);
  for (int trial = 0; trial < 25; ++trial) {
    auto mode = static_cast<OrderingProblem::Mode>(trial % 3);
    OrderingProblem prob = ilptest::random_problem(rng, 3, kSix, mode, false);
    auto oracle = ilptest::brute_force_best(prob);
    if (!oracle) {
      CHECK_THROWS_AS(solve(prob), InfeasibleError);
      continue;
    }
    SolveResult result = solve(prob);
    CHECK(result.proven_optimal);
    CHECK(result.objective == oracle->second);
    auto audit = check_feasibility(result.assignment, prob);
    CAPTURE(audit.violations.empty() ? "" : audit.violations[0].c_str());
    CHECK(audit.ok);
  }
}

TEST_CASE("five-event two-relation problems match the oracle") {
  // Full before/after tournaments: 10 pairs, 1024 labellings each.
  std::mt19937 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    OrderingProblem prob = ilptest::random_problem(rng, 5, kTwo,
                                                   OrderingProblem::Mode::kNone, false);
    auto oracle = ilptest::brute_force_best(prob);
    REQUIRE(oracle.has_value());
    SolveResult result = solve(prob);
    CHECK(result.proven_optimal);
    CHECK(result.objective == oracle->second);
    CHECK(check_feasibility(result.assignment, prob).ok);
  }
}

TEST_CASE("hinge loss is never negative") {
  std::mt19937 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    OrderingProblem prob = ilptest::random_problem(
        rng, 4, kSix, static_cast<OrderingProblem::Mode>(trial % 3), false);
    auto pairs = prob.pair_set();
    Assignment pred, gold;
    for (const auto& pair : pairs) {
      pred.labels[pair] = prob.relations[rng() % prob.relations.size()];
      gold.labels[pair] = prob.relations[rng() % prob.relations.size()];
    }
    CHECK(hinge_loss(pred, gold, prob) >= Rational(0));
  }
}

TEST_CASE("validation rejects malformed problems") {
  OrderingProblem prob = one_pair_problem();
  prob.probabilities[{"e1", "e2"}][RelationLabel::kBefore] = Rational(9, 10);  // sums to 1.2
  CHECK_THROWS_WITH_AS(prob.validate(), doctest::Contains("sum"), std::invalid_argument);

  prob = one_pair_problem();
  prob.alpha = Rational(0);
  CHECK_THROWS_AS(prob.validate(), std::invalid_argument);

  prob = one_pair_problem();
  prob.stage_relations[{"e1", "e2"}] = RelationLabel::kBefore;  // touches no dummy
  CHECK_THROWS_WITH_AS(prob.validate(), doctest::Contains("dummy"), std::invalid_argument);

  prob = one_pair_problem();
  prob.probabilities[{"e1", "ghost"}] = prob.probabilities[{"e1", "e2"}];
  CHECK_THROWS_WITH_AS(prob.validate(), doctest::Contains("unknown"), std::invalid_argument);
}
