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

#include "stage/chart.hpp"

#include <algorithm>
#include <stdexcept>

namespace stage {

namespace {

int triangle_offset(int n, int i, int j) {
  return i * n - i * (i - 1) / 2 + (j - i - 1);
}

// Complete-type priority for tie-breaks: Instant > Interval > Range.
int type_priority(Nonterminal nt) {
  switch (nt) {
    case Nonterminal::kInstant:
      return 0;
    case Nonterminal::kInterval:
      return 1;
    case Nonterminal::kRange:
      return 2;
    default:
      return 3;
  }
}

}  // namespace

const ChartEntry* ChartCell::find(Nonterminal symbol) const {
  for (const auto& e : entries) {
    if (e.symbol == symbol) return &e;
  }
  return nullptr;
}

Chart::Chart(std::vector<Token> tokens, int n) : n_(n), tokens_(std::move(tokens)) {
  cells_.resize(static_cast<std::size_t>(n) * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) cells_[triangle_offset(n_, i, j)].span = {i, j};
  }
}

const ChartCell& Chart::cell(int i, int j) const { return cells_[triangle_offset(n_, i, j)]; }
ChartCell& Chart::cell(int i, int j) { return cells_[triangle_offset(n_, i, j)]; }

namespace {

ChartEntry& entry_for(ChartCell& cell, Nonterminal symbol) {
  for (auto& e : cell.entries) {
    if (e.symbol == symbol) return e;
  }
  cell.entries.push_back(ChartEntry{symbol, {}});
  std::sort(cell.entries.begin(), cell.entries.end(),
            [](const ChartEntry& a, const ChartEntry& b) { return a.symbol < b.symbol; });
  for (auto& e : cell.entries) {
    if (e.symbol == symbol) return e;
  }
  throw std::logic_error("entry_for: unreachable");
}

}  // namespace

Chart parse_all(const std::vector<Token>& tokens, const Grammar& grammar) {
  if (tokens.empty()) throw std::invalid_argument("parse_all: empty token sequence");
  int n = static_cast<int>(tokens.size());
  Chart chart(tokens, n);

  // Diagonal: lexical classes, then promotions to fixpoint.
  for (int i = 0; i < n; ++i) {
    ChartCell& cell = chart.cell(i, i + 1);
    for (Nonterminal cls : tokens[i].classes)
      entry_for(cell, cls).derivations.push_back(Derivation{});
    for (bool changed = true; changed;) {
      changed = false;
      for (const GrammarRule* rule : grammar.lexical_rules()) {
        if (cell.find(rule->rhs[0]) == nullptr) continue;
        ChartEntry& target = entry_for(cell, rule->lhs);
        bool present = std::any_of(target.derivations.begin(), target.derivations.end(),
                                   [&](const Derivation& d) { return d.rule == rule; });
        if (!present) {
          target.derivations.push_back(Derivation{rule, -1, rule->rhs[0], rule->rhs[0]});
          changed = true;
        }
      }
    }
  }

  for (int width = 2; width <= n; ++width) {
    for (int i = 0; i + width <= n; ++i) {
      int j = i + width;
      ChartCell& cell = chart.cell(i, j);
      for (int k = i + 1; k < j; ++k) {
        const ChartCell& left = chart.cell(i, k);
        const ChartCell& right = chart.cell(k, j);
        if (left.entries.empty() || right.entries.empty()) continue;
        for (const GrammarRule* rule : grammar.binary_rules()) {
          if (left.find(rule->rhs[0]) == nullptr || right.find(rule->rhs[1]) == nullptr) continue;
          entry_for(cell, rule->lhs)
              .derivations.push_back(Derivation{rule, k, rule->rhs[0], rule->rhs[1]});
        }
      }
    }
  }
  return chart;
}

namespace {

std::vector<ParseTree> trees_for(const Chart& chart, Span span, const ChartEntry& entry) {
  std::vector<ParseTree> out;
  std::vector<Derivation> derivations = entry.derivations;
  std::sort(derivations.begin(), derivations.end(), [](const Derivation& a, const Derivation& b) {
    int ia = a.rule ? a.rule->id : -1;
    int ib = b.rule ? b.rule->id : -1;
    if (ia != ib) return ia < ib;
    return a.split < b.split;
  });
  for (const Derivation& d : derivations) {
    if (d.rule == nullptr) {
      ParseTree leaf;
      leaf.root = entry.symbol;
      leaf.span = span;
      leaf.token = chart.tokens()[span.first];
      out.push_back(std::move(leaf));
    } else if (d.rule->is_lexical()) {
      const ChartEntry* child = chart.cell(span.first, span.second).find(d.left);
      for (ParseTree& sub : trees_for(chart, span, *child)) {
        ParseTree t;
        t.root = entry.symbol;
        t.span = span;
        t.rule = d.rule;
        t.children.push_back(std::move(sub));
        out.push_back(std::move(t));
      }
    } else {
      const ChartEntry* lc = chart.cell(span.first, d.split).find(d.left);
      const ChartEntry* rc = chart.cell(d.split, span.second).find(d.right);
      auto left_trees = trees_for(chart, {span.first, d.split}, *lc);
      auto right_trees = trees_for(chart, {d.split, span.second}, *rc);
      for (const ParseTree& lt : left_trees) {
        for (const ParseTree& rt : right_trees) {
          ParseTree t;
          t.root = entry.symbol;
          t.span = span;
          t.rule = d.rule;
          t.children.push_back(lt);
          t.children.push_back(rt);
          out.push_back(std::move(t));
        }
      }
    }
  }
  return out;
}

// Deterministic representative derivation: smallest (rule id, split) at every
// node, children chosen the same way.
ParseTree canonical_tree(const Chart& chart, Span span, const ChartEntry& entry) {
  const Derivation* best = nullptr;
  for (const Derivation& d : entry.derivations) {
    if (best == nullptr) {
      best = &d;
      continue;
    }
    int id = d.rule ? d.rule->id : -1;
    int best_id = best->rule ? best->rule->id : -1;
    if (id < best_id || (id == best_id && d.split < best->split)) best = &d;
  }
  if (best == nullptr) throw std::logic_error("canonical_tree: entry without derivations");
  if (best->rule == nullptr) {
    ParseTree leaf;
    leaf.root = entry.symbol;
    leaf.span = span;
    leaf.token = chart.tokens()[span.first];
    return leaf;
  }
  ParseTree t;
  t.root = entry.symbol;
  t.span = span;
  t.rule = best->rule;
  if (best->rule->is_lexical()) {
    const ChartEntry* child = chart.cell(span.first, span.second).find(best->left);
    t.children.push_back(canonical_tree(chart, span, *child));
  } else {
    const ChartEntry* lc = chart.cell(span.first, best->split).find(best->left);
    const ChartEntry* rc = chart.cell(best->split, span.second).find(best->right);
    t.children.push_back(canonical_tree(chart, {span.first, best->split}, *lc));
    t.children.push_back(canonical_tree(chart, {best->split, span.second}, *rc));
  }
  return t;
}

struct Candidate {
  Span span;
  Nonterminal symbol;
};

std::vector<Candidate> complete_candidates(const Chart& chart) {
  std::vector<Candidate> out;
  int n = chart.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      for (const ChartEntry& e : chart.cell(i, j).entries) {
        if (is_complete_type(e.symbol)) out.push_back(Candidate{{i, j}, e.symbol});
      }
    }
  }
  return out;
}

}  // namespace

std::vector<ParseTree> enumerate_trees(const Chart& chart, Span span) {
  if (!chart.in_bounds(span)) throw std::invalid_argument("enumerate_trees: span out of bounds");
  std::vector<ParseTree> out;
  for (const ChartEntry& e : chart.cell(span.first, span.second).entries) {
    auto trees = trees_for(chart, span, e);
    out.insert(out.end(), trees.begin(), trees.end());
  }
  return out;
}

std::optional<ParseTree> select_tree(const Chart& chart) {
  auto candidates = complete_candidates(chart);
  if (candidates.empty()) return std::nullopt;
  const Candidate* best = nullptr;
  for (const Candidate& c : candidates) {
    if (best == nullptr) {
      best = &c;
      continue;
    }
    int w = c.span.second - c.span.first;
    int bw = best->span.second - best->span.first;
    if (w != bw) {
      if (w > bw) best = &c;
    } else if (c.span.first != best->span.first) {
      if (c.span.first < best->span.first) best = &c;
    } else if (type_priority(c.symbol) < type_priority(best->symbol)) {
      best = &c;
    }
  }
  const ChartEntry* entry = chart.cell(best->span.first, best->span.second).find(best->symbol);
  return canonical_tree(chart, best->span, *entry);
}

std::vector<ParseTree> select_all_maximal(const Chart& chart) {
  auto candidates = complete_candidates(chart);
  std::vector<Candidate> maximal;
  for (const Candidate& c : candidates) {
    bool contained = false;
    for (const Candidate& other : candidates) {
      bool wider = other.span.second - other.span.first > c.span.second - c.span.first;
      if (wider && other.span.first <= c.span.first && c.span.second <= other.span.second) {
        contained = true;
        break;
      }
    }
    if (!contained) maximal.push_back(c);
  }
  // One tree per span: best symbol by type priority.
  std::vector<ParseTree> out;
  std::sort(maximal.begin(), maximal.end(), [](const Candidate& a, const Candidate& b) {
    if (a.span != b.span) return a.span < b.span;
    return type_priority(a.symbol) < type_priority(b.symbol);
  });
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    if (i > 0 && maximal[i].span == maximal[i - 1].span) continue;
    const ChartEntry* entry =
        chart.cell(maximal[i].span.first, maximal[i].span.second).find(maximal[i].symbol);
    out.push_back(canonical_tree(chart, maximal[i].span, *entry));
  }
  return out;
}

std::optional<ParseTree> select_widest(const Chart& chart, Nonterminal symbol) {
  int n = chart.size();
  for (int width = n; width >= 1; --width) {
    for (int i = 0; i + width <= n; ++i) {
      const ChartEntry* entry = chart.cell(i, i + width).find(symbol);
      if (entry != nullptr) return canonical_tree(chart, {i, i + width}, *entry);
    }
  }
  return std::nullopt;
}

std::string render_bracketed(const ParseTree& tree) {
  std::string out = "(";
  out += nonterminal_name(tree.root);
  if (tree.is_leaf()) {
    out += ' ';
    out += tree.token.surface;
  } else {
    for (const ParseTree& child : tree.children) {
      out += ' ';
      out += render_bracketed(child);
    }
  }
  out += ')';
  return out;
}

}  // namespace stage
