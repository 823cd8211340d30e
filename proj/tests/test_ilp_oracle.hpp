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

// Test-only exhaustive oracle for the ordering engine. Everything here is a
// direct restatement of the problem definition: it enumerates every labelling,
// checks the constraints by brute force, and sums the objective on its own.
// It must stay independent of the solver's search and propagation code.

#pragma once

#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "stage/ilp.hpp"

namespace ilptest {

using stage::Assignment;
using stage::OrderingProblem;
using stage::PairKey;
using stage::Rational;
using stage::RelationLabel;

inline std::vector<PairKey> oracle_pairs(const OrderingProblem& prob) {
  std::set<PairKey> keys;
  for (const auto& [k, v] : prob.probabilities) keys.insert(k);
  for (const auto& [k, v] : prob.stage_relations) keys.insert(k);
  return {keys.begin(), keys.end()};
}

inline Rational oracle_objective(const OrderingProblem& prob, const std::vector<PairKey>& pairs,
                                 const std::vector<RelationLabel>& labels) {
  Rational total(0);
  int nrel = static_cast<int>(prob.relations.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto prob_it = prob.probabilities.find(pairs[p]);
    if (prob_it != prob.probabilities.end()) {
      total += prob_it->second.at(labels[p]);
    } else if (prob.dummy_probs == OrderingProblem::DummyProbs::kUniform) {
      total += Rational(1, nrel);
    }
    if (prob.mode == OrderingProblem::Mode::kSoft) {
      auto stage_it = prob.stage_relations.find(pairs[p]);
      if (stage_it != prob.stage_relations.end()) {
        total += labels[p] == stage_it->second
                     ? prob.alpha
                     : (Rational(1) - prob.alpha) / Rational(nrel - 1);
      }
    }
  }
  return total;
}

inline bool oracle_feasible(const OrderingProblem& prob, const std::vector<PairKey>& pairs,
                            const std::vector<RelationLabel>& labels) {
  if (prob.mode == OrderingProblem::Mode::kHard) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      auto it = prob.stage_relations.find(pairs[p]);
      if (it != prob.stage_relations.end() && labels[p] != it->second) return false;
    }
  }
  for (std::size_t ab = 0; ab < pairs.size(); ++ab) {
    for (std::size_t bc = 0; bc < pairs.size(); ++bc) {
      if (pairs[bc].source != pairs[ab].target) continue;
      for (std::size_t ac = 0; ac < pairs.size(); ++ac) {
        if (pairs[ac].source != pairs[ab].source || pairs[ac].target != pairs[bc].target)
          continue;
        for (const auto& t : prob.tc) {
          int lhs = (labels[ab] == t[0] ? 1 : 0) + (labels[bc] == t[1] ? 1 : 0) -
                    (labels[ac] == t[2] ? 1 : 0);
          if (lhs > 1) return false;
        }
      }
    }
  }
  return true;
}

// Best feasible labelling by full enumeration, or nullopt when none exists.
inline std::optional<std::pair<Assignment, Rational>> brute_force_best(
    const OrderingProblem& prob) {
  std::vector<PairKey> pairs = oracle_pairs(prob);
  int nrel = static_cast<int>(prob.relations.size());
  std::vector<RelationLabel> labels(pairs.size(), prob.relations[0]);
  std::optional<Rational> best;
  std::vector<RelationLabel> best_labels;
  std::vector<int> digits(pairs.size(), 0);
  for (;;) {
    for (std::size_t p = 0; p < pairs.size(); ++p) labels[p] = prob.relations[digits[p]];
    if (oracle_feasible(prob, pairs, labels)) {
      Rational value = oracle_objective(prob, pairs, labels);
      if (!best || value > *best) {
        best = value;
        best_labels = labels;
      }
    }
    // odometer over |R|^pairs
    std::size_t at = 0;
    while (at < digits.size() && ++digits[at] == nrel) digits[at++] = 0;
    if (at == digits.size()) break;
  }
  if (pairs.empty()) return std::make_pair(Assignment{}, Rational(0));
  if (!best) return std::nullopt;
  Assignment assignment;
  for (std::size_t p = 0; p < pairs.size(); ++p) assignment.labels[pairs[p]] = best_labels[p];
  return std::make_pair(std::move(assignment), *best);
}

// Random instance generator shared by the unit and acceptance suites.
// `node_budget` counts events plus dummies; pair distributions are exact
// thousandths (a shared denominator keeps every downstream sum inside
// int64). With `consistent_stage`, parser predictions derive from one
// sampled timeline, so they are mutually consistent under transitivity.
inline OrderingProblem random_problem(std::mt19937& rng, int node_budget,
                                      const std::vector<RelationLabel>& relations,
                                      OrderingProblem::Mode mode, bool uniform_probs,
                                      bool consistent_stage = false) {
  OrderingProblem prob;
  prob.relations = relations;
  prob.mode = mode;
  prob.tc = stage::default_transitivity_table(relations);
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  int dummies = mode == OrderingProblem::Mode::kNone ? 0 : pick(0, std::min(2, node_budget - 2));
  int events = std::max(2, node_budget - dummies);
  for (int i = 1; i <= events; ++i) prob.events.push_back("e" + std::to_string(i));
  for (int i = 1; i <= dummies; ++i) prob.dummy_events.push_back("t" + std::to_string(i));

  int nrel = static_cast<int>(relations.size());
  auto random_distribution = [&] {
    // nrel weights summing to exactly 1000
    std::vector<int> cuts = {0, 1000};
    for (int i = 1; i < nrel; ++i) cuts.push_back(pick(0, 1000));
    std::sort(cuts.begin(), cuts.end());
    std::map<RelationLabel, Rational> probs;
    for (int r = 0; r < nrel; ++r) probs[relations[r]] = Rational(cuts[r + 1] - cuts[r], 1000);
    return probs;
  };
  auto uniform_distribution = [&] {
    std::map<RelationLabel, Rational> probs;
    for (int r = 0; r < nrel; ++r) probs[relations[r]] = Rational(1, nrel);
    return probs;
  };

  for (std::size_t i = 0; i < prob.events.size(); ++i) {
    for (std::size_t j = i + 1; j < prob.events.size(); ++j) {
      prob.probabilities[{prob.events[i], prob.events[j]}] =
          uniform_probs ? uniform_distribution() : random_distribution();
    }
  }

  std::map<std::string, int> node_time;
  if (consistent_stage) {
    std::vector<std::string> all = prob.events;
    all.insert(all.end(), prob.dummy_events.begin(), prob.dummy_events.end());
    std::vector<int> order(all.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t i = 0; i < all.size(); ++i) node_time[all[i]] = order[i];
  }
  auto stage_label = [&](const std::string& s, const std::string& t) {
    if (consistent_stage)
      return node_time[s] < node_time[t] ? RelationLabel::kBefore : RelationLabel::kAfter;
    RelationLabel r;
    do {
      r = relations[pick(0, nrel - 1)];
    } while (r == RelationLabel::kVague);
    return r;
  };
  for (const auto& d : prob.dummy_events) {
    for (const auto& e : prob.events) {
      if (pick(0, 1) == 0) prob.stage_relations[{d, e}] = stage_label(d, e);
    }
    for (const auto& d2 : prob.dummy_events) {
      if (d < d2 && pick(0, 1) == 0) prob.stage_relations[{d, d2}] = stage_label(d, d2);
    }
  }
  return prob;
}

inline OrderingProblem strip_stage_pairs(const OrderingProblem& prob) {
  OrderingProblem out = prob;
  out.stage_relations.clear();
  return out;
}

}  // namespace ilptest
