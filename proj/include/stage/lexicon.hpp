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

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stage/calendar.hpp"
#include "stage/rational.hpp"

namespace stage {

// Grammar categories. Tokens are tagged with these; binary rules combine
// them. Instant/Interval/Range are the complete expression types.
enum class Nonterminal {
  kNum,
  kUnit,
  kLength,
  kInstant,
  kInterval,
  kRange,
  kMonthName,
  kWeekdayName,
  kYearNum,
  kDateLit,
  kDeictic,
  kFuncIn,
  kFuncOn,
  kFuncAt,
  kFuncFor,
  kFuncFrom,
  kFuncTo,
  kFuncUntil,
  kFuncSince,
  kFuncBy,
  kFuncWithin,
  kFuncBefore,
  kFuncAfter,
  kFuncDuring,
  kModNext,
  kModLast,
  kModThis,
  kModSometime,
  kModLaterIn,
  kAgoMarker,
};

constexpr int kNonterminalCount = 30;

const char* nonterminal_name(Nonterminal nt);
std::optional<Nonterminal> nonterminal_from_name(std::string_view name);

bool is_complete_type(Nonterminal nt);  // Instant, Interval, Range
bool is_function_word_class(Nonterminal nt);  // Func*, Mod*, AgoMarker

struct Token {
  std::string surface;               // raw slice of the input
  std::size_t begin = 0;             // char offsets into the input
  std::size_t end = 0;
  std::vector<Nonterminal> classes;  // sorted, unique; empty if out of vocabulary
};

// Numeric value of a numeral surface ("3", "three", "1st", "twenty-one").
struct NumeralValue {
  Rational value;
  bool ordinal = false;
};

// Temporal vocabulary: explicit surface entries (from the grammar file)
// plus built-in recognizers for digit strings, ordinals, number words,
// year numbers and date literals.
class Lexicon {
 public:
  Lexicon();

  void add_surface(const std::string& surface, Nonterminal cls);

  // Classes for a case-folded surface, recognizers included.
  std::vector<Nonterminal> classes_of(std::string_view surface) const;

  bool has_multiword_entries() const { return !multiword_.empty(); }
  // Longest multiword entry starting with `first` that matches upcoming words.
  std::optional<std::size_t> match_multiword(const std::vector<std::string>& folded_words,
                                             std::size_t at) const;

  const std::map<std::string, std::vector<Nonterminal>>& entries() const { return table_; }

  // Leaf valuations used by semantic composition.
  static std::optional<NumeralValue> numeral_value(std::string_view surface);
  static std::optional<int> month_index(std::string_view surface);    // 1..12
  static std::optional<int> weekday_index(std::string_view surface);  // 0=Monday
  static std::optional<int> year_value(std::string_view surface);     // 1900..2100
  static std::optional<DateTime> date_value(std::string_view surface);

  static std::string fold(std::string_view s);  // ASCII case fold

 private:
  std::map<std::string, std::vector<Nonterminal>> table_;
  // multiword surfaces, keyed by first word -> remaining word sequences
  std::map<std::string, std::vector<std::vector<std::string>>> multiword_;
};

// Whitespace/punctuation segmentation. Token chars are alphanumerics plus
// '/', ':' and '-'; everything else separates. Multiword vocabulary entries
// ("later in") are merged into single tokens. Unknown words come back with
// empty `classes`.
std::vector<Token> tokenize(std::string_view text, const Lexicon& lexicon);

}  // namespace stage
