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

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace stage {

namespace {

constexpr int kMaxRelations = 6;

int relation_index(const std::vector<RelationLabel>& relations, RelationLabel r) {
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i] == r) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

std::vector<PairKey> OrderingProblem::pair_set() const {
  std::set<PairKey> keys;
  for (const auto& [k, v] : probabilities) keys.insert(k);
  for (const auto& [k, v] : stage_relations) keys.insert(k);
  return {keys.begin(), keys.end()};
}

void OrderingProblem::validate() const {
  if (relations.size() < 2 || relations.size() > kMaxRelations)
    throw std::invalid_argument("OrderingProblem: relation set must have 2..6 labels");
  std::set<RelationLabel> rel_set(relations.begin(), relations.end());
  if (rel_set.size() != relations.size())
    throw std::invalid_argument("OrderingProblem: duplicate relation labels");
  if (!(alpha > Rational(0)) || alpha > Rational(1))
    throw std::invalid_argument("OrderingProblem: alpha must lie in (0, 1]");
  if (exact_limit < 1) throw std::invalid_argument("OrderingProblem: exact_limit must be >= 1");

  std::set<std::string> known_ids(events.begin(), events.end());
  if (known_ids.size() != events.size())
    throw std::invalid_argument("OrderingProblem: duplicate event ids");
  std::set<std::string> dummies(dummy_events.begin(), dummy_events.end());
  for (const auto& d : dummies) {
    if (!known_ids.insert(d).second)
      throw std::invalid_argument("OrderingProblem: id is both event and dummy: " + d);
  }

  const Rational kTolerance(1, 1000000);
  for (const auto& [pair, probs] : probabilities) {
    std::string where = "(" + pair.source + "," + pair.target + ")";
    if (pair.source == pair.target)
      throw std::invalid_argument("OrderingProblem: self-pair " + where);
    if (!known_ids.contains(pair.source) || !known_ids.contains(pair.target))
      throw std::invalid_argument("OrderingProblem: pair over unknown ids " + where);
    if (probs.size() != relations.size())
      throw std::invalid_argument("OrderingProblem: pair " + where + " must score all " +
                                  std::to_string(relations.size()) + " relations");
    Rational sum(0);
    for (const auto& [r, p] : probs) {
      if (!rel_set.contains(r))
        throw std::invalid_argument("OrderingProblem: pair " + where +
                                    " scores a relation outside R");
      if (p.is_negative() || p > Rational(1))
        throw std::invalid_argument("OrderingProblem: probability outside [0,1] at " + where);
      sum += p;
    }
    if ((sum - Rational(1)).abs() > kTolerance)
      throw std::invalid_argument("OrderingProblem: probabilities at " + where +
                                  " sum to " + sum.str() + ", not 1");
  }

  for (const auto& [pair, r] : stage_relations) {
    std::string where = "(" + pair.source + "," + pair.target + ")";
    if (pair.source == pair.target)
      throw std::invalid_argument("OrderingProblem: self stage pair " + where);
    if (!known_ids.contains(pair.source) || !known_ids.contains(pair.target))
      throw std::invalid_argument("OrderingProblem: stage pair over unknown ids " + where);
    if (!dummies.contains(pair.source) && !dummies.contains(pair.target))
      throw std::invalid_argument("OrderingProblem: stage pair " + where +
                                  " touches no dummy event");
    if (r == RelationLabel::kVague)
      throw std::invalid_argument("OrderingProblem: stage pair " + where + " predicts vague");
    if (!rel_set.contains(r))
      throw std::invalid_argument("OrderingProblem: stage pair " + where +
                                  " predicts a relation outside R");
  }

  for (const auto& t : tc) {
    for (RelationLabel r : t) {
      if (r == RelationLabel::kVague)
        throw std::invalid_argument("OrderingProblem: transitivity triple mentions vague");
      if (!rel_set.contains(r))
        throw std::invalid_argument("OrderingProblem: transitivity triple outside R");
    }
  }
}

namespace {

// Per-pair per-relation contribution to the objective.
std::vector<std::array<Rational, kMaxRelations>> score_table(const OrderingProblem& prob,
                                                             const std::vector<PairKey>& pairs) {
  int nrel = static_cast<int>(prob.relations.size());
  std::vector<std::array<Rational, kMaxRelations>> score(pairs.size());
  Rational uniform = Rational(1, nrel);
  Rational off_bonus = (Rational(1) - prob.alpha) / Rational(nrel - 1);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto prob_it = prob.probabilities.find(pairs[p]);
    auto stage_it = prob.stage_relations.find(pairs[p]);
    for (int r = 0; r < nrel; ++r) {
      Rational base(0);
      if (prob_it != prob.probabilities.end()) {
        base = prob_it->second.at(prob.relations[r]);
      } else if (prob.dummy_probs == OrderingProblem::DummyProbs::kUniform) {
        base = uniform;
      }
      if (prob.mode == OrderingProblem::Mode::kSoft &&
          stage_it != prob.stage_relations.end()) {
        base += prob.relations[r] == stage_it->second ? prob.alpha : off_bonus;
      }
      score[p][r] = base;
    }
  }
  return score;
}

struct Solver {
  const OrderingProblem& prob;
  std::vector<PairKey> pairs;
  std::map<PairKey, int> pair_index;
  int nrel;
  std::vector<std::array<Rational, kMaxRelations>> score;
  // Allowed third-relation mask per (r1, r2); all-ones = unconstrained.
  std::array<std::array<unsigned, kMaxRelations>, kMaxRelations> comp{};
  struct Triple {
    int ab, bc, ac;
  };
  std::vector<Triple> triples;
  std::vector<std::vector<int>> triples_of;

  std::optional<Rational> best;
  std::vector<int> best_values;
  long long nodes = 0;
  long long node_budget = -1;
  bool budget_exhausted = false;

  explicit Solver(const OrderingProblem& p) : prob(p) {
    pairs = prob.pair_set();
    for (std::size_t i = 0; i < pairs.size(); ++i) pair_index[pairs[i]] = static_cast<int>(i);
    nrel = static_cast<int>(prob.relations.size());
    score = score_table(prob, pairs);

    unsigned full = (1u << nrel) - 1;
    for (int a = 0; a < nrel; ++a) {
      for (int b = 0; b < nrel; ++b) comp[a][b] = full;
    }
    for (const auto& t : prob.tc) {
      int r1 = relation_index(prob.relations, t[0]);
      int r2 = relation_index(prob.relations, t[1]);
      int r3 = relation_index(prob.relations, t[2]);
      if (r1 < 0 || r2 < 0 || r3 < 0) continue;
      comp[r1][r2] &= 1u << r3;
    }

    // Ordered event triples whose three pairs are all scored.
    std::map<std::string, std::vector<int>> by_source;
    for (std::size_t i = 0; i < pairs.size(); ++i) by_source[pairs[i].source].push_back(static_cast<int>(i));
    triples_of.resize(pairs.size());
    for (std::size_t ab = 0; ab < pairs.size(); ++ab) {
      auto it = by_source.find(pairs[ab].target);
      if (it == by_source.end()) continue;
      for (int bc : it->second) {
        auto ac_it = pair_index.find(PairKey{pairs[ab].source, pairs[bc].target});
        if (ac_it == pair_index.end()) continue;
        int idx = static_cast<int>(triples.size());
        triples.push_back(Triple{static_cast<int>(ab), bc, ac_it->second});
        triples_of[ab].push_back(idx);
        triples_of[bc].push_back(idx);
        triples_of[ac_it->second].push_back(idx);
      }
    }
  }

  static bool singleton(unsigned mask) { return mask != 0 && (mask & (mask - 1)) == 0; }
  static int mask_value(unsigned mask) { return __builtin_ctz(mask); }

  std::string describe_triple(const Triple& t, const std::vector<unsigned>& dom) const {
    auto show = [&](int p) {
      std::string v = singleton(dom[p])
                          ? relation_symbol(prob.relations[mask_value(dom[p])])
                          : std::string("?");
      return "(" + pairs[p].source + "," + pairs[p].target + ")=" + v;
    };
    return show(t.ab) + " & " + show(t.bc) + " -> " + show(t.ac);
  }

  // Unit propagation from the queued singleton pairs. Returns a conflict
  // description, or nullopt on success.
  std::optional<std::string> propagate(std::vector<unsigned>& dom, std::deque<int> queue) const {
    auto tighten = [&](int p, unsigned mask, const Triple& t) -> std::optional<std::string> {
      unsigned next = dom[p] & mask;
      if (next == dom[p]) return std::nullopt;
      dom[p] = next;
      if (next == 0)
        return "transitivity conflict at " + describe_triple(t, dom);
      if (singleton(next)) queue.push_back(p);
      return std::nullopt;
    };
    while (!queue.empty()) {
      int p = queue.front();
      queue.pop_front();
      for (int ti : triples_of[p]) {
        const Triple& t = triples[ti];
        bool ab_s = singleton(dom[t.ab]);
        bool bc_s = singleton(dom[t.bc]);
        bool ac_s = singleton(dom[t.ac]);
        if (ab_s && bc_s) {
          if (auto c = tighten(t.ac, comp[mask_value(dom[t.ab])][mask_value(dom[t.bc])], t))
            return c;
        }
        if (ab_s && ac_s) {
          unsigned allowed = 0;
          int r1 = mask_value(dom[t.ab]);
          int r3 = mask_value(dom[t.ac]);
          for (int r2 = 0; r2 < nrel; ++r2) {
            if (comp[r1][r2] & (1u << r3)) allowed |= 1u << r2;
          }
          if (auto c = tighten(t.bc, allowed, t)) return c;
        }
        if (bc_s && ac_s) {
          unsigned allowed = 0;
          int r2 = mask_value(dom[t.bc]);
          int r3 = mask_value(dom[t.ac]);
          for (int r1 = 0; r1 < nrel; ++r1) {
            if (comp[r1][r2] & (1u << r3)) allowed |= 1u << r1;
          }
          if (auto c = tighten(t.ab, allowed, t)) return c;
        }
      }
    }
    return std::nullopt;
  }

  Rational upper_bound(const std::vector<unsigned>& dom) const {
    Rational bound(0);
    for (std::size_t p = 0; p < dom.size(); ++p) {
      const Rational* maxv = nullptr;
      for (int r = 0; r < nrel; ++r) {
        if ((dom[p] & (1u << r)) == 0) continue;
        if (maxv == nullptr || score[p][r] > *maxv) maxv = &score[p][r];
      }
      bound += *maxv;
    }
    return bound;
  }

  void search(const std::vector<unsigned>& dom) {
    ++nodes;
    if (node_budget >= 0 && nodes > node_budget) {
      budget_exhausted = true;
      return;
    }
    Rational bound = upper_bound(dom);
    if (best && bound <= *best) return;

    // Branch pair: widest probability margin among undecided pairs.
    int branch = -1;
    Rational branch_margin(0);
    for (std::size_t p = 0; p < dom.size(); ++p) {
      if (singleton(dom[p])) continue;
      Rational first(0), second(0);
      bool any = false;
      for (int r = 0; r < nrel; ++r) {
        if ((dom[p] & (1u << r)) == 0) continue;
        if (!any || score[p][r] > first) {
          second = any ? first : second;
          first = score[p][r];
          any = true;
        } else if (score[p][r] > second) {
          second = score[p][r];
        }
      }
      Rational margin = first - second;
      if (branch < 0 || margin > branch_margin) {
        branch = static_cast<int>(p);
        branch_margin = margin;
      }
    }

    if (branch < 0) {  // every pair decided
      best = bound;
      best_values.assign(dom.size(), 0);
      for (std::size_t p = 0; p < dom.size(); ++p) best_values[p] = mask_value(dom[p]);
      return;
    }

    // Value order: descending contribution, relation order breaking ties.
    std::vector<int> values;
    for (int r = 0; r < nrel; ++r) {
      if (dom[branch] & (1u << r)) values.push_back(r);
    }
    std::stable_sort(values.begin(), values.end(),
                     [&](int x, int y) { return score[branch][x] > score[branch][y]; });
    for (int v : values) {
      if (budget_exhausted) return;
      std::vector<unsigned> child = dom;
      child[branch] = 1u << v;
      if (propagate(child, {branch})) continue;  // conflict
      search(child);
    }
  }
};

}  // namespace

Rational objective_score(const Assignment& assign, const OrderingProblem& prob) {
  std::vector<PairKey> pairs = prob.pair_set();
  if (assign.labels.size() != pairs.size())
    throw std::invalid_argument("objective_score: assignment does not match the pair set");
  auto score = score_table(prob, pairs);
  Rational total(0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto it = assign.labels.find(pairs[p]);
    if (it == assign.labels.end())
      throw std::invalid_argument("objective_score: missing pair (" + pairs[p].source + "," +
                                  pairs[p].target + ")");
    int r = relation_index(prob.relations, it->second);
    if (r < 0)
      throw std::invalid_argument("objective_score: label outside R at (" + pairs[p].source +
                                  "," + pairs[p].target + ")");
    total += score[p][r];
  }
  return total;
}

SolveResult solve(const OrderingProblem& prob) {
  prob.validate();
  Solver solver(prob);

  std::vector<unsigned> dom(solver.pairs.size(), (1u << solver.nrel) - 1);
  std::deque<int> seeds;
  if (prob.mode == OrderingProblem::Mode::kHard) {
    for (const auto& [pair, r] : prob.stage_relations) {
      int p = solver.pair_index.at(pair);
      dom[p] = 1u << relation_index(prob.relations, r);
      seeds.push_back(p);
    }
    if (auto conflict = solver.propagate(dom, seeds))
      throw InfeasibleError("hard constraints are mutually inconsistent: " + *conflict);
  }

  int n_nodes = static_cast<int>(prob.events.size() + prob.dummy_events.size());
  if (n_nodes > prob.exact_limit) solver.node_budget = 500000;

  solver.search(dom);
  if (!solver.best)
    throw InfeasibleError("no feasible assignment exists under the transitivity table");

  SolveResult result;
  result.objective = *solver.best;
  result.proven_optimal = !solver.budget_exhausted;
  for (std::size_t p = 0; p < solver.pairs.size(); ++p)
    result.assignment.labels[solver.pairs[p]] = prob.relations[solver.best_values[p]];
  return result;
}

Rational hinge_loss(const Assignment& pred, const Assignment& gold, const OrderingProblem& prob) {
  if (pred.labels.size() != gold.labels.size())
    throw std::invalid_argument("hinge_loss: assignments cover different pair sets");
  Rational hamming(0);
  for (const auto& [pair, label] : pred.labels) {
    auto it = gold.labels.find(pair);
    if (it == gold.labels.end())
      throw std::invalid_argument("hinge_loss: assignments cover different pair sets");
    if (it->second != label) hamming += Rational(1);
  }
  Rational margin = hamming + objective_score(pred, prob) - objective_score(gold, prob);
  return margin > Rational(0) ? margin : Rational(0);
}

std::vector<TransitivityTriple> default_transitivity_table(
    std::span<const RelationLabel> relations) {
  using R = RelationLabel;
  static constexpr std::array<TransitivityTriple, 17> kMaster = {{
      {R::kBefore, R::kBefore, R::kBefore},
      {R::kBefore, R::kSimultaneous, R::kBefore},
      {R::kBefore, R::kIncludes, R::kBefore},
      {R::kAfter, R::kAfter, R::kAfter},
      {R::kAfter, R::kSimultaneous, R::kAfter},
      {R::kAfter, R::kIncludes, R::kAfter},
      {R::kSimultaneous, R::kBefore, R::kBefore},
      {R::kSimultaneous, R::kAfter, R::kAfter},
      {R::kSimultaneous, R::kSimultaneous, R::kSimultaneous},
      {R::kSimultaneous, R::kIncludes, R::kIncludes},
      {R::kSimultaneous, R::kIsIncluded, R::kIsIncluded},
      {R::kIncludes, R::kSimultaneous, R::kIncludes},
      {R::kIncludes, R::kIncludes, R::kIncludes},
      {R::kIsIncluded, R::kBefore, R::kBefore},
      {R::kIsIncluded, R::kAfter, R::kAfter},
      {R::kIsIncluded, R::kSimultaneous, R::kIsIncluded},
      {R::kIsIncluded, R::kIsIncluded, R::kIsIncluded},
  }};
  std::set<RelationLabel> available(relations.begin(), relations.end());
  std::vector<TransitivityTriple> out;
  for (const auto& t : kMaster) {
    if (available.contains(t[0]) && available.contains(t[1]) && available.contains(t[2]))
      out.push_back(t);
  }
  return out;
}

std::vector<TransitivityTriple> load_transitivity_table(const std::string& text) {
  std::vector<TransitivityTriple> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream row(line);
    std::vector<std::string> symbols;
    std::string s;
    while (row >> s) symbols.push_back(s);
    if (symbols.empty()) continue;
    if (symbols.size() != 3)
      throw std::invalid_argument("tc table line " + std::to_string(line_no) +
                                  ": expected three relation symbols");
    TransitivityTriple triple;
    for (int i = 0; i < 3; ++i) {
      auto r = relation_from_symbol(symbols[i]);
      if (!r)
        throw std::invalid_argument("tc table line " + std::to_string(line_no) +
                                    ": unknown relation " + symbols[i]);
      if (*r == RelationLabel::kVague)
        throw std::invalid_argument("tc table line " + std::to_string(line_no) +
                                    ": vague cannot participate in transitivity");
      triple[i] = *r;
    }
    out.push_back(triple);
  }
  return out;
}

FeasibilityReport check_feasibility(const Assignment& assign, const OrderingProblem& prob) {
  FeasibilityReport report;
  auto note = [&report](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  std::vector<PairKey> pairs = prob.pair_set();
  std::set<RelationLabel> rel_set(prob.relations.begin(), prob.relations.end());

  // Uniqueness over the pair set: exactly one label per pair, label in R.
  for (const auto& pair : pairs) {
    auto it = assign.labels.find(pair);
    if (it == assign.labels.end()) {
      note("pair (" + pair.source + "," + pair.target + ") has no label");
      continue;
    }
    if (!rel_set.contains(it->second))
      note("pair (" + pair.source + "," + pair.target + ") labelled outside R");
  }
  for (const auto& [pair, label] : assign.labels) {
    if (!std::binary_search(pairs.begin(), pairs.end(), pair))
      note("assignment labels unscored pair (" + pair.source + "," + pair.target + ")");
  }

  // Transitivity: a direct restatement of the triple inequality.
  for (const auto& ab : pairs) {
    auto ab_it = assign.labels.find(ab);
    if (ab_it == assign.labels.end()) continue;
    for (const auto& bc : pairs) {
      if (bc.source != ab.target) continue;
      auto bc_it = assign.labels.find(bc);
      if (bc_it == assign.labels.end()) continue;
      auto ac_it = assign.labels.find(PairKey{ab.source, bc.target});
      if (ac_it == assign.labels.end()) continue;
      for (const auto& t : prob.tc) {
        int lhs = (ab_it->second == t[0] ? 1 : 0) + (bc_it->second == t[1] ? 1 : 0) -
                  (ac_it->second == t[2] ? 1 : 0);
        if (lhs > 1)
          note("triple (" + ab.source + "," + ab.target + "," + bc.target + ") violates (" +
               relation_symbol(t[0]) + "," + relation_symbol(t[1]) + "," + relation_symbol(t[2]) +
               ")");
      }
    }
  }

  if (prob.mode == OrderingProblem::Mode::kHard) {
    for (const auto& [pair, r] : prob.stage_relations) {
      auto it = assign.labels.find(pair);
      if (it == assign.labels.end() || it->second != r)
        note("hard constraint (" + pair.source + "," + pair.target + ")=" + relation_symbol(r) +
             " not enforced");
    }
  }
  return report;
}

}  // namespace stage
