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

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "stage/chart.hpp"
#include "stage/temporal.hpp"

namespace stage {

// Intermediate values flowing up the parse tree during composition.
struct NumValue {
  Rational value;
  bool ordinal = false;
};
struct UnitValue {
  UnitKind unit;
};
struct LengthValue {
  Length length;
  bool from_ordinal = false;  // "fourth quarter" stays distinguishable from "four quarters"
};
struct MonthValue {
  int month;  // 1..12
};
struct WeekdayValue {
  int weekday;  // 0=Monday
};
struct YearValue {
  int year;
};
struct DateValue {
  DateTime date;
};
struct DeicticValue {
  enum class Kind { kNow, kToday, kYesterday, kTomorrow } kind;
};
// Function words and markers; carries no content, rule tags encode identity.
struct MarkerValue {
  Nonterminal cls;
};

using SemValue = std::variant<NumValue, UnitValue, LengthValue, MonthValue, WeekdayValue,
                              YearValue, DateValue, DeicticValue, MarkerValue, TimeExpression>;

// Registered composition function: arity counts contentful (non-marker)
// children; `result` is the grammar category the output belongs to.
struct CompositionRule {
  int arity;
  Nonterminal result;
  SemValue (*fn)(std::span<const SemValue>);
};

// nullptr when the tag is unknown.
const CompositionRule* find_composition(const std::string& tag);

// Pure. Throws std::invalid_argument on arity mismatch, std::logic_error on
// an unregistered tag (validate_grammar catches those earlier).
SemValue apply_rule(const std::string& tag, std::span<const SemValue> children);

// Bottom-up composition over a parse tree from the chart parser. Length
// roots come back as BareLength; roots of any other non-expression category
// throw std::invalid_argument.
TimeExpression compose(const ParseTree& tree);

// Leaf valuation: the semantic value of a single token under a class.
SemValue leaf_value(Nonterminal cls, const std::string& surface);

}  // namespace stage
