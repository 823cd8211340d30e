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

#include "stage/grammar.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "stage/compose.hpp"

namespace stage {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string word;
  while (in >> word) out.push_back(word);
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw std::invalid_argument("grammar line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Grammar Grammar::load(std::string_view text) {
  Grammar g;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int next_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::vector<std::string> words = split_ws(line);
    if (words.empty()) continue;

    if (words[0] == "lex") {
      // lex SURFACE... : CLASS
      auto colon = std::find(words.begin(), words.end(), ":");
      if (colon == words.end() || colon == words.begin() + 1 || colon + 2 != words.end())
        fail(line_no, "expected `lex SURFACE : CLASS`");
      std::string surface;
      for (auto it = words.begin() + 1; it != colon; ++it) {
        if (!surface.empty()) surface += ' ';
        surface += *it;
      }
      auto cls = nonterminal_from_name(*(colon + 1));
      if (!cls) fail(line_no, "unknown class " + *(colon + 1));
      g.lexicon_.add_surface(surface, *cls);
      continue;
    }

    // LHS -> RHS... @tag
    if (words.size() < 4 || words[1] != "->" || words.back().empty() || words.back()[0] != '@')
      fail(line_no, "expected `LHS -> RHS... @tag`");
    GrammarRule rule;
    auto lhs = nonterminal_from_name(words[0]);
    if (!lhs) fail(line_no, "unknown nonterminal " + words[0]);
    rule.lhs = *lhs;
    for (std::size_t i = 2; i + 1 < words.size(); ++i) {
      auto sym = nonterminal_from_name(words[i]);
      if (!sym) fail(line_no, "unknown nonterminal " + words[i]);
      rule.rhs.push_back(*sym);
    }
    rule.tag = words.back().substr(1);
    if (rule.tag.empty()) fail(line_no, "empty rule tag");
    rule.id = next_id++;
    g.rules_.push_back(std::move(rule));
  }
  for (const auto& r : g.rules_) {
    if (r.is_binary()) g.binary_.push_back(&r);
    if (r.is_lexical()) g.lexical_.push_back(&r);
  }
  return g;
}

Grammar Grammar::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open grammar file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

const Grammar& Grammar::builtin() {
  static const Grammar g = load(builtin_grammar_text());
  return g;
}

std::vector<Diagnostic> Grammar::validate() const {
  std::vector<Diagnostic> out;
  auto report = [&out](std::string msg) { out.push_back(Diagnostic{std::move(msg)}); };

  for (const auto& r : rules_) {
    std::string desc = std::string(nonterminal_name(r.lhs)) + " rule #" + std::to_string(r.id) +
                       " @" + r.tag;
    if (r.rhs.size() != 1 && r.rhs.size() != 2) {
      report(desc + ": rhs must have 1 (lexical) or 2 (binary) symbols, has " +
             std::to_string(r.rhs.size()));
      continue;
    }
    const CompositionRule* comp = find_composition(r.tag);
    if (comp == nullptr) {
      report(desc + ": no registered composition function");
      continue;
    }
    int contentful = 0;
    for (Nonterminal s : r.rhs) {
      if (!is_function_word_class(s)) ++contentful;
    }
    if (contentful != comp->arity)
      report(desc + ": rule provides " + std::to_string(contentful) +
             " contentful child(ren), composition expects " + std::to_string(comp->arity));
    if (comp->result != r.lhs)
      report(desc + ": composition produces " + std::string(nonterminal_name(comp->result)) +
             ", rule is labelled " + nonterminal_name(r.lhs));
  }

  // Reachability: every rhs symbol must be derivable from the lexicon, a
  // recognizer, or some rule; every nonterminal must occur somewhere.
  std::set<Nonterminal> derivable;
  for (const auto& [surface, classes] : lexicon_.entries()) {
    for (Nonterminal c : classes) derivable.insert(c);
  }
  derivable.insert(Nonterminal::kNum);      // numeral recognizer
  derivable.insert(Nonterminal::kYearNum);  // year recognizer
  derivable.insert(Nonterminal::kDateLit);  // date literal recognizer
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rules_) {
      if (derivable.contains(r.lhs)) continue;
      bool all = true;
      for (Nonterminal s : r.rhs) all = all && derivable.contains(s);
      if (all) {
        derivable.insert(r.lhs);
        changed = true;
      }
    }
  }
  std::set<Nonterminal> mentioned = derivable;
  for (const auto& r : rules_) {
    mentioned.insert(r.lhs);
    for (Nonterminal s : r.rhs) {
      mentioned.insert(s);
      if (!derivable.contains(s))
        report(std::string("symbol ") + nonterminal_name(s) + " in rule #" + std::to_string(r.id) +
               " is not derivable");
    }
  }
  for (int i = 0; i < kNonterminalCount; ++i) {
    Nonterminal nt = static_cast<Nonterminal>(i);
    if (!mentioned.contains(nt))
      report(std::string("nonterminal ") + nonterminal_name(nt) +
             " is unreachable (no rule or vocabulary entry mentions it)");
  }
  return out;
}

}  // namespace stage
