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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stage/grammar.hpp"
#include "stage/lexicon.hpp"

namespace stage {

using Span = std::pair<int, int>;  // [i, j) token indices

// One way of deriving `symbol` over a span: a lexical seed (token class), a
// promotion of another entry in the same cell, or a binary rule over two
// sub-spans.
struct Derivation {
  const GrammarRule* rule = nullptr;  // null for lexical seeds
  int split = -1;                     // k for binary rules
  Nonterminal left = Nonterminal::kNum;
  Nonterminal right = Nonterminal::kNum;  // binary only
};

struct ChartEntry {
  Nonterminal symbol;
  std::vector<Derivation> derivations;
};

struct ChartCell {
  Span span;
  std::vector<ChartEntry> entries;  // ordered by symbol

  const ChartEntry* find(Nonterminal symbol) const;
};

// Exhaustive CKY chart over a token sequence.
class Chart {
 public:
  Chart(std::vector<Token> tokens, int n);

  int size() const { return n_; }
  const std::vector<Token>& tokens() const { return tokens_; }

  const ChartCell& cell(int i, int j) const;
  ChartCell& cell(int i, int j);

  bool in_bounds(Span span) const {
    return span.first >= 0 && span.first < span.second && span.second <= n_;
  }

 private:
  int n_;
  std::vector<Token> tokens_;
  std::vector<ChartCell> cells_;  // row-major upper triangle
};

struct ParseTree {
  Nonterminal root;
  Span span;
  const GrammarRule* rule = nullptr;  // null for lexical leaves
  std::vector<ParseTree> children;    // 0 = leaf, 1 = promotion, 2 = binary
  Token token;                        // leaves only

  bool is_leaf() const { return children.empty(); }
};

// Builds every derivable entry for every span; O(n^3 * |rules|).
// Throws std::invalid_argument on an empty token sequence.
Chart parse_all(const std::vector<Token>& tokens, const Grammar& grammar);

// All distinct derivation trees of any symbol over `span`, deterministic
// order. Throws std::invalid_argument when span is out of bounds.
std::vector<ParseTree> enumerate_trees(const Chart& chart, Span span);

// The widest tree rooted in a complete type (Instant/Interval/Range);
// ties break leftmost start, then Instant > Interval > Range, then lowest
// rule-id derivation. nullopt when no complete-type tree exists.
std::optional<ParseTree> select_tree(const Chart& chart);

// Every complete-type tree whose span is not strictly contained in another
// complete-type entry's span; one tree per span, ordered by span.
std::vector<ParseTree> select_all_maximal(const Chart& chart);

// Widest tree rooted at exactly `symbol`; used for bare-Length fallbacks.
std::optional<ParseTree> select_widest(const Chart& chart, Nonterminal symbol);

// "(Instant (Length (Num three) (Unit days)) (AgoMarker ago))"
std::string render_bracketed(const ParseTree& tree);

}  // namespace stage
