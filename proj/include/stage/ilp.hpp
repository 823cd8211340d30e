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

#pragma once

#include <array>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stage/bridge.hpp"
#include "stage/rational.hpp"

namespace stage {

// Hard-mode constraints clash under transitivity; the message names a
// violating pair/triple.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PairKey {
  std::string source;
  std::string target;

  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

using TransitivityTriple = std::array<RelationLabel, 3>;  // r1(A,B) & r2(B,C) => r3(A,C)

// Document-level ordering instance: scored event pairs, optional
// parser-predicted relations on pairs touching dummy (time-expression)
// events, and the constraint mode.
struct OrderingProblem {
  enum class Mode { kNone, kHard, kSoft };
  enum class DummyProbs { kUniform, kZero };

  std::vector<std::string> events;        // E
  std::vector<std::string> dummy_events;  // E_d
  std::vector<RelationLabel> relations;   // R (with or without v)
  std::map<PairKey, std::map<RelationLabel, Rational>> probabilities;
  std::map<PairKey, RelationLabel> stage_relations;  // TP, keys touch E_d
  Mode mode = Mode::kNone;
  Rational alpha = Rational(9, 10);
  std::vector<TransitivityTriple> tc;
  DummyProbs dummy_probs = DummyProbs::kUniform;  // base term for unscored stage pairs
  int exact_limit = 12;

  // probabilities' keys plus stage keys, sorted.
  std::vector<PairKey> pair_set() const;

  // Probability-sum, relation-membership, alpha-range and stage-key checks;
  // throws std::invalid_argument with the offending pair.
  void validate() const;
};

struct Assignment {
  std::map<PairKey, RelationLabel> labels;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct SolveResult {
  Assignment assignment;
  Rational objective;
  bool proven_optimal = true;
};

// Mode-aware objective: sum of chosen-label probabilities, plus in soft mode
// alpha / (1-alpha)/(|R|-1) terms per stage pair. Throws when the assignment
// does not cover the pair set exactly.
Rational objective_score(const Assignment& assign, const OrderingProblem& prob);

// Exact maximizer of objective_score subject to label uniqueness,
// transitivity over `tc`, and in hard mode the forced stage labels.
// Guaranteed optimal up to `exact_limit` events; larger instances fall back
// to best-found with proven_optimal=false.
SolveResult solve(const OrderingProblem& prob);

// max(0, hamming(pred, gold) + score(pred) - score(gold)).
Rational hinge_loss(const Assignment& pred, const Assignment& gold, const OrderingProblem& prob);

// Deterministic relation compositions over the given inventory; no triple
// mentions the vague label.
std::vector<TransitivityTriple> default_transitivity_table(std::span<const RelationLabel> relations);

// Loads "r1 r2 r3" lines; '#' comments. Throws std::invalid_argument with a
// line number on malformed rows or vague labels.
std::vector<TransitivityTriple> load_transitivity_table(const std::string& text);

// Independent post-hoc audit of a solution: binary/unique labels from R,
// every transitivity triple satisfied, and in hard mode every stage pair
// forced. Deliberately written as a direct restatement of the constraints.
struct FeasibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};
FeasibilityReport check_feasibility(const Assignment& assign, const OrderingProblem& prob);

}  // namespace stage
