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

#include <string>
#include <string_view>
#include <vector>

#include "stage/lexicon.hpp"

namespace stage {

// Binary rule (two nonterminal rhs symbols) or lexical promotion (one token
// class rhs). The tag names the composition function applied when the rule
// fires.
struct GrammarRule {
  Nonterminal lhs = Nonterminal::kNum;
  std::vector<Nonterminal> rhs;
  std::string tag;
  int id = 0;  // position in the grammar file; stable tie-break key

  bool is_binary() const { return rhs.size() == 2; }
  bool is_lexical() const { return rhs.size() == 1; }
};

struct Diagnostic {
  std::string message;
};

// The temporal vocabulary plus the rule set. Immutable after load; shared
// freely across threads.
class Grammar {
 public:
  Grammar() = default;  // empty; fill via load()

  // Parses the line-oriented grammar format:
  //   lex SURFACE : CLASS
  //   LHS -> RHS1 RHS2 @tag
  //   LHS -> RHS @tag           (lexical promotion)
  // '#' starts a comment. Throws std::invalid_argument with a line number
  // on malformed input.
  static Grammar load(std::string_view text);
  static Grammar load_file(const std::string& path);

  // The grammar compiled into the binary; data/grammar.stg carries the same
  // text for editing without a rebuild.
  static const Grammar& builtin();

  Grammar(Grammar&&) = default;
  Grammar& operator=(Grammar&&) = default;
  Grammar(const Grammar&) = delete;  // binary_/lexical_ point into rules_
  Grammar& operator=(const Grammar&) = delete;

  const std::vector<GrammarRule>& rules() const { return rules_; }
  const Lexicon& lexicon() const { return lexicon_; }

  const std::vector<const GrammarRule*>& binary_rules() const { return binary_; }
  const std::vector<const GrammarRule*>& lexical_rules() const { return lexical_; }

  // Empty when every rule is well-formed, every tag has a registered
  // composition function of matching result category, and every symbol is
  // derivable.
  std::vector<Diagnostic> validate() const;

 private:
  std::vector<GrammarRule> rules_;
  std::vector<const GrammarRule*> binary_;
  std::vector<const GrammarRule*> lexical_;
  Lexicon lexicon_;
};

// The grammar text compiled into the binary (see data/grammar.stg).
std::string_view builtin_grammar_text();

}  // namespace stage
