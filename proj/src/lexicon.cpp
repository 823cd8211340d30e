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

#include "stage/lexicon.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace stage {

namespace {

struct NonterminalName {
  Nonterminal nt;
  const char* name;
};

constexpr std::array<NonterminalName, kNonterminalCount> kNames = {{
    {Nonterminal::kNum, "Num"},
    {Nonterminal::kUnit, "Unit"},
    {Nonterminal::kLength, "Length"},
    {Nonterminal::kInstant, "Instant"},
    {Nonterminal::kInterval, "Interval"},
    {Nonterminal::kRange, "Range"},
    {Nonterminal::kMonthName, "MonthName"},
    {Nonterminal::kWeekdayName, "WeekdayName"},
    {Nonterminal::kYearNum, "YearNum"},
    {Nonterminal::kDateLit, "DateLit"},
    {Nonterminal::kDeictic, "Deictic"},
    {Nonterminal::kFuncIn, "FuncIn"},
    {Nonterminal::kFuncOn, "FuncOn"},
    {Nonterminal::kFuncAt, "FuncAt"},
    {Nonterminal::kFuncFor, "FuncFor"},
    {Nonterminal::kFuncFrom, "FuncFrom"},
    {Nonterminal::kFuncTo, "FuncTo"},
    {Nonterminal::kFuncUntil, "FuncUntil"},
    {Nonterminal::kFuncSince, "FuncSince"},
    {Nonterminal::kFuncBy, "FuncBy"},
    {Nonterminal::kFuncWithin, "FuncWithin"},
    {Nonterminal::kFuncBefore, "FuncBefore"},
    {Nonterminal::kFuncAfter, "FuncAfter"},
    {Nonterminal::kFuncDuring, "FuncDuring"},
    {Nonterminal::kModNext, "ModNext"},
    {Nonterminal::kModLast, "ModLast"},
    {Nonterminal::kModThis, "ModThis"},
    {Nonterminal::kModSometime, "ModSometime"},
    {Nonterminal::kModLaterIn, "ModLaterIn"},
    {Nonterminal::kAgoMarker, "AgoMarker"},
}};

const char* kMonthNames[12] = {"january", "february", "march",     "april",   "may",      "june",
                               "july",    "august",   "september", "october", "november", "december"};
const char* kMonthAbbrev[12] = {"jan", "feb", "mar", "apr", "may", "jun",
                                "jul", "aug", "sep", "oct", "nov", "dec"};

const char* kWeekdayNames[7] = {"monday", "tuesday",  "wednesday", "thursday",
                                "friday", "saturday", "sunday"};
const char* kWeekdayAbbrev[7] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};

const char* kOnes[20] = {"zero",    "one",     "two",       "three",    "four",
                         "five",    "six",     "seven",     "eight",    "nine",
                         "ten",     "eleven",  "twelve",    "thirteen", "fourteen",
                         "fifteen", "sixteen", "seventeen", "eighteen", "nineteen"};
const char* kTens[10] = {"",      "",      "twenty",  "thirty", "forty",
                         "fifty", "sixty", "seventy", "eighty", "ninety"};
const char* kOrdinalOnes[20] = {"zeroth", "first",    "second",  "third",   "fourth",
                                "fifth",  "sixth",    "seventh", "eighth",  "ninth",
                                "tenth",  "eleventh", "twelfth", nullptr,   nullptr,
                                nullptr,  nullptr,    nullptr,   nullptr,   nullptr};

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<int> word_number(std::string_view word, bool* ordinal) {
  *ordinal = false;
  for (int i = 0; i < 20; ++i) {
    if (word == kOnes[i]) return i;
  }
  for (int i = 2; i < 10; ++i) {
    if (word == kTens[i]) return i * 10;
  }
  // ordinal words: irregulars plus the regular -th/-ieth forms
  for (int i = 0; i < 20; ++i) {
    if (kOrdinalOnes[i] != nullptr && word == kOrdinalOnes[i]) {
      *ordinal = true;
      return i;
    }
    std::string regular = std::string(kOnes[i]) + "th";
    if (word == regular) {
      *ordinal = true;
      return i;
    }
  }
  for (int i = 2; i < 10; ++i) {
    std::string tens(kTens[i]);
    if (!tens.empty()) {
      std::string ord = tens.substr(0, tens.size() - 1) + "ieth";  // twenty -> twentieth
      if (word == ord) {
        *ordinal = true;
        return i * 10;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

const char* nonterminal_name(Nonterminal nt) {
  for (const auto& e : kNames) {
    if (e.nt == nt) return e.name;
  }
  return "?";
}

std::optional<Nonterminal> nonterminal_from_name(std::string_view name) {
  for (const auto& e : kNames) {
    if (name == e.name) return e.nt;
  }
  return std::nullopt;
}

bool is_complete_type(Nonterminal nt) {
  return nt == Nonterminal::kInstant || nt == Nonterminal::kInterval || nt == Nonterminal::kRange;
}

bool is_function_word_class(Nonterminal nt) {
  switch (nt) {
    case Nonterminal::kFuncIn:
    case Nonterminal::kFuncOn:
    case Nonterminal::kFuncAt:
    case Nonterminal::kFuncFor:
    case Nonterminal::kFuncFrom:
    case Nonterminal::kFuncTo:
    case Nonterminal::kFuncUntil:
    case Nonterminal::kFuncSince:
    case Nonterminal::kFuncBy:
    case Nonterminal::kFuncWithin:
    case Nonterminal::kFuncBefore:
    case Nonterminal::kFuncAfter:
    case Nonterminal::kFuncDuring:
    case Nonterminal::kModNext:
    case Nonterminal::kModLast:
    case Nonterminal::kModThis:
    case Nonterminal::kModSometime:
    case Nonterminal::kModLaterIn:
    case Nonterminal::kAgoMarker:
      return true;
    default:
      return false;
  }
}

std::string Lexicon::fold(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

Lexicon::Lexicon() = default;

void Lexicon::add_surface(const std::string& surface, Nonterminal cls) {
  std::string folded = fold(surface);
  auto& classes = table_[folded];
  if (std::find(classes.begin(), classes.end(), cls) == classes.end()) {
    classes.push_back(cls);
    std::sort(classes.begin(), classes.end());
  }
  auto space = folded.find(' ');
  if (space != std::string::npos) {
    std::vector<std::string> words;
    std::size_t pos = 0;
    while (pos < folded.size()) {
      auto next = folded.find(' ', pos);
      if (next == std::string::npos) next = folded.size();
      words.push_back(folded.substr(pos, next - pos));
      pos = next + 1;
    }
    std::vector<std::string> rest(words.begin() + 1, words.end());
    multiword_[words[0]].push_back(std::move(rest));
  }
}

std::optional<std::size_t> Lexicon::match_multiword(const std::vector<std::string>& folded_words,
                                                    std::size_t at) const {
  auto it = multiword_.find(folded_words[at]);
  if (it == multiword_.end()) return std::nullopt;
  std::size_t best = 0;
  for (const auto& rest : it->second) {
    if (rest.empty() || at + rest.size() >= folded_words.size()) continue;
    bool match = true;
    for (std::size_t k = 0; k < rest.size(); ++k) {
      if (folded_words[at + 1 + k] != rest[k]) {
        match = false;
        break;
      }
    }
    if (match && rest.size() > best) best = rest.size();
  }
  if (best == 0) return std::nullopt;
  return at + best;  // index of the last merged word
}

std::vector<Nonterminal> Lexicon::classes_of(std::string_view surface) const {
  std::string folded = fold(surface);
  std::vector<Nonterminal> out;
  auto it = table_.find(folded);
  if (it != table_.end()) out = it->second;
  auto add = [&out](Nonterminal nt) {
    if (std::find(out.begin(), out.end(), nt) == out.end()) out.push_back(nt);
  };
  if (year_value(folded)) {
    // Four-digit numbers in 1900..2100 read as years, not counts.
    add(Nonterminal::kYearNum);
  } else if (numeral_value(folded)) {
    add(Nonterminal::kNum);
  }
  if (date_value(folded)) add(Nonterminal::kDateLit);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<NumeralValue> Lexicon::numeral_value(std::string_view surface) {
  std::string s = fold(surface);
  if (s == "a" || s == "an") return NumeralValue{Rational(1), false};
  if (all_digits(s)) {
    if (s.size() > 9) return std::nullopt;
    std::int64_t v = 0;
    for (char c : s) v = v * 10 + (c - '0');
    return NumeralValue{Rational(v), false};
  }
  // digit ordinals: 1st 2nd 3rd 4th ...
  if (s.size() > 2) {
    std::string_view tail(s.data() + s.size() - 2, 2);
    if (tail == "st" || tail == "nd" || tail == "rd" || tail == "th") {
      std::string_view head(s.data(), s.size() - 2);
      if (all_digits(head) && head.size() <= 9) {
        std::int64_t v = 0;
        for (char c : head) v = v * 10 + (c - '0');
        return NumeralValue{Rational(v), true};
      }
    }
  }
  // number words, possibly hyphenated compounds ("twenty-three", "ninety-ninth")
  auto hyphen = s.find('-');
  bool ordinal = false;
  if (hyphen == std::string::npos) {
    auto v = word_number(s, &ordinal);
    if (!v) return std::nullopt;
    return NumeralValue{Rational(*v), ordinal};
  }
  std::string first = s.substr(0, hyphen);
  std::string second = s.substr(hyphen + 1);
  bool ord1 = false, ord2 = false;
  auto v1 = word_number(first, &ord1);
  auto v2 = word_number(second, &ord2);
  if (!v1 || !v2 || ord1) return std::nullopt;
  if (*v1 % 10 != 0 || *v1 < 20 || *v2 >= 10 || *v2 == 0) return std::nullopt;
  return NumeralValue{Rational(*v1 + *v2), ord2};
}

std::optional<int> Lexicon::month_index(std::string_view surface) {
  std::string s = fold(surface);
  for (int i = 0; i < 12; ++i) {
    if (s == kMonthNames[i] || s == kMonthAbbrev[i]) return i + 1;
  }
  if (s == "sept") return 9;
  return std::nullopt;
}

std::optional<int> Lexicon::weekday_index(std::string_view surface) {
  std::string s = fold(surface);
  for (int i = 0; i < 7; ++i) {
    if (s == kWeekdayNames[i] || s == kWeekdayAbbrev[i]) return i;
  }
  if (s == "tues") return 1;
  if (s == "thur" || s == "thurs") return 3;
  return std::nullopt;
}

std::optional<int> Lexicon::year_value(std::string_view surface) {
  if (surface.size() != 4 || !all_digits(surface)) return std::nullopt;
  int v = 0;
  for (char c : surface) v = v * 10 + (c - '0');
  if (v < 1900 || v > 2100) return std::nullopt;
  return v;
}

std::optional<DateTime> Lexicon::date_value(std::string_view surface) {
  // "MM/DD/YY", "MM/DD/YYYY" or ISO "YYYY-MM-DD"
  std::array<std::string, 3> parts;
  int count = 0;
  char sep = 0;
  for (char c : surface) {
    if (c == '/' || c == '-') {
      if (sep == 0) sep = c;
      if (c != sep) return std::nullopt;
      if (++count > 2) return std::nullopt;
    } else if (c >= '0' && c <= '9') {
      parts[count].push_back(c);
    } else {
      return std::nullopt;
    }
  }
  if (count != 2) return std::nullopt;
  for (const auto& p : parts) {
    if (p.empty() || p.size() > 4) return std::nullopt;
  }
  auto to_int = [](const std::string& p) {
    int v = 0;
    for (char c : p) v = v * 10 + (c - '0');
    return v;
  };
  DateTime dt;
  if (sep == '-' && parts[0].size() == 4) {
    dt.year = to_int(parts[0]);
    dt.month = to_int(parts[1]);
    dt.day = to_int(parts[2]);
  } else {
    dt.month = to_int(parts[0]);
    dt.day = to_int(parts[1]);
    int y = to_int(parts[2]);
    if (parts[2].size() <= 2) {
      // two-digit years pivot at 50: 1951..2050
      dt.year = y > 50 ? 1900 + y : 2000 + y;
    } else {
      dt.year = y;
    }
  }
  if (!valid_date(dt)) return std::nullopt;
  return dt;
}

std::vector<Token> tokenize(std::string_view text, const Lexicon& lexicon) {
  std::vector<Token> raw;
  std::size_t i = 0;
  auto is_token_char = [](char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '/' || c == ':' || c == '-';
  };
  while (i < text.size()) {
    if (!is_token_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    while (i < text.size() && is_token_char(text[i])) ++i;
    Token t;
    t.begin = begin;
    t.end = i;
    t.surface = std::string(text.substr(begin, i - begin));
    raw.push_back(std::move(t));
  }

  // Merge multiword vocabulary entries into single tokens.
  std::vector<Token> merged;
  if (lexicon.has_multiword_entries() && raw.size() > 1) {
    std::vector<std::string> folded;
    folded.reserve(raw.size());
    for (const auto& t : raw) folded.push_back(Lexicon::fold(t.surface));
    std::size_t at = 0;
    while (at < raw.size()) {
      auto last = lexicon.match_multiword(folded, at);
      if (last) {
        Token t;
        t.begin = raw[at].begin;
        t.end = raw[*last].end;
        t.surface = std::string(text.substr(t.begin, t.end - t.begin));
        merged.push_back(std::move(t));
        at = *last + 1;
      } else {
        merged.push_back(raw[at]);
        ++at;
      }
    }
  } else {
    merged = std::move(raw);
  }

  for (auto& t : merged) {
    // Multiword surfaces may contain arbitrary separators in the raw slice;
    // normalize inner whitespace for lookup.
    std::string key;
    bool in_gap = false;
    for (char c : t.surface) {
      if (is_token_char(c)) {
        if (in_gap && !key.empty()) key.push_back(' ');
        in_gap = false;
        key.push_back(c);
      } else {
        in_gap = true;
      }
    }
    t.classes = lexicon.classes_of(key);
  }
  return merged;
}

}  // namespace stage
