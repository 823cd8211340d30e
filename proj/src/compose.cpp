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

#include "stage/compose.hpp"

#include <map>
#include <stdexcept>

namespace stage {

namespace {

const TimeExpression& as_expr(const SemValue& v) { return std::get<TimeExpression>(v); }

const Instant& as_instant(const SemValue& v) { return std::get<Instant>(as_expr(v)); }
const Interval& as_interval(const SemValue& v) { return std::get<Interval>(as_expr(v)); }
const Range& as_range(const SemValue& v) { return std::get<Range>(as_expr(v)); }
const LengthValue& as_length(const SemValue& v) { return std::get<LengthValue>(v); }

TimePoint present_offset(const Rational& hours, const Length& via) {
  AnchoredPoint p;
  p.anchor = Anchor::present();
  p.offset = hours;
  p.via = via;
  return TimePoint::anchored(std::move(p));
}

TimePoint present_snapped(UnitKind unit, int steps) {
  AnchoredPoint p;
  p.anchor = Anchor::present();
  p.snap = unit;
  p.steps = steps;
  return TimePoint::anchored(std::move(p));
}

// Enclosing calendar cycle for ordinal references ("the fourth quarter").
std::optional<UnitKind> parent_cycle(UnitKind unit) {
  switch (unit) {
    case UnitKind::kSecond:
      return UnitKind::kMinute;
    case UnitKind::kMinute:
      return UnitKind::kHour;
    case UnitKind::kHour:
      return UnitKind::kDay;
    case UnitKind::kDay:
      return UnitKind::kWeek;
    case UnitKind::kWeek:
      return UnitKind::kMonth;
    case UnitKind::kMonth:
    case UnitKind::kQuarter:
      return UnitKind::kYear;
    case UnitKind::kYear:
      return UnitKind::kDecade;
    case UnitKind::kDecade:
      return std::nullopt;
  }
  return std::nullopt;
}

SemValue num_unit_to_length(std::span<const SemValue> c) {
  const auto& num = std::get<NumValue>(c[0]);
  const auto& unit = std::get<UnitValue>(c[1]);
  return LengthValue{length_from(num.value, unit.unit), num.ordinal};
}

SemValue length_ago_to_instant(std::span<const SemValue> c) {
  const Length& len = as_length(c[0]).length;
  return TimeExpression{Instant{present_offset(-len.hours, len)}};
}

SemValue in_length_to_instant(std::span<const SemValue> c) {
  const Length& len = as_length(c[0]).length;
  return TimeExpression{Instant{present_offset(len.hours, len)}};
}

SemValue for_length_to_interval(std::span<const SemValue> c) {
  const Length& len = as_length(c[0]).length;
  return TimeExpression{Interval{TimePoint::unknown(), TimePoint::unknown(), len}};
}

SemValue within_length_to_range(std::span<const SemValue> c) {
  const Length& len = as_length(c[0]).length;
  AnchoredPoint lower;
  lower.anchor = Anchor::present();
  return TimeExpression{Range{TimePoint::anchored(lower), present_offset(len.hours, len), len,
                              std::nullopt}};
}

SemValue before_instant_to_interval(std::span<const SemValue> c) {
  return TimeExpression{Interval{TimePoint::unknown(), as_instant(c[0]).point, std::nullopt}};
}

SemValue after_instant_to_interval(std::span<const SemValue> c) {
  return TimeExpression{Interval{as_instant(c[0]).point, TimePoint::unknown(), std::nullopt}};
}

SemValue merge_intervals(std::span<const SemValue> c) {
  const Interval& a = as_interval(c[0]);
  const Interval& b = as_interval(c[1]);
  Interval merged;
  merged.start = a.start.is_unknown() ? b.start : a.start;
  merged.end = b.end.is_unknown() ? a.end : b.end;
  // The exact duration is derived at normalization once endpoints resolve.
  merged.length = std::nullopt;
  return TimeExpression{merged};
}

SemValue from_range_to_interval(std::span<const SemValue> c) {
  return TimeExpression{Interval{as_range(c[0]).lower, TimePoint::unknown(), std::nullopt}};
}

SemValue until_range_to_interval(std::span<const SemValue> c) {
  return TimeExpression{Interval{TimePoint::unknown(), as_range(c[0]).upper, std::nullopt}};
}

TimeExpression month_range(int month) {
  AnchoredPoint lower;
  lower.anchor = Anchor::month_ref(month);
  AnchoredPoint upper = lower;
  upper.sub_unit = UnitKind::kMonth;
  upper.sub_steps = 1;
  return Range{TimePoint::anchored(lower), TimePoint::anchored(upper),
               length_from(Rational(1), UnitKind::kMonth), std::nullopt};
}

SemValue month_to_range(std::span<const SemValue> c) {
  return TimeExpression{month_range(std::get<MonthValue>(c[0]).month)};
}

SemValue wrap_range(std::span<const SemValue> c) { return TimeExpression{as_range(c[0])}; }

SemValue wrap_instant(std::span<const SemValue> c) { return TimeExpression{as_instant(c[0])}; }

TimeExpression unit_span_range(UnitKind unit, int first_step) {
  return Range{present_snapped(unit, first_step), present_snapped(unit, first_step + 1),
               length_from(Rational(1), unit), std::nullopt};
}

SemValue this_unit_to_range(std::span<const SemValue> c) {
  return TimeExpression{unit_span_range(std::get<UnitValue>(c[0]).unit, 0)};
}

SemValue next_unit_to_range(std::span<const SemValue> c) {
  return TimeExpression{unit_span_range(std::get<UnitValue>(c[0]).unit, 1)};
}

SemValue last_unit_to_range(std::span<const SemValue> c) {
  return TimeExpression{unit_span_range(std::get<UnitValue>(c[0]).unit, -1)};
}

SemValue the_nth_unit_to_range(std::span<const SemValue> c) {
  const LengthValue& lv = as_length(c[0]);
  const Length& len = lv.length;
  auto parent = parent_cycle(len.unit);
  if (lv.from_ordinal && parent && len.number.is_integer() && len.number >= Rational(1)) {
    int n = static_cast<int>(len.number.num());
    AnchoredPoint lower;
    lower.anchor = Anchor::present();
    lower.snap = *parent;
    lower.sub_unit = len.unit;
    lower.sub_steps = n - 1;
    AnchoredPoint upper = lower;
    upper.sub_steps = n;
    return TimeExpression{Range{TimePoint::anchored(lower), TimePoint::anchored(upper),
                                length_from(Rational(1), len.unit), std::nullopt}};
  }
  // Cardinal fallback ("the four hours"): a span of that length at present.
  AnchoredPoint lower;
  lower.anchor = Anchor::present();
  return TimeExpression{Range{TimePoint::anchored(lower), present_offset(len.hours, len), len,
                              std::nullopt}};
}

SemValue later_in_range(std::span<const SemValue> c) {
  const Range& r = as_range(c[0]);
  if (!r.span_length) return TimeExpression{r};
  Rational half_hours = r.span_length->hours / Rational(2);
  Length half = length_from(r.span_length->number / Rational(2), r.span_length->unit);
  return TimeExpression{Range{r.lower.plus_hours(half_hours), r.upper, half, r.inner_length}};
}

TimeExpression weekday_instant(int weekday, int week_shift) {
  AnchoredPoint p;
  p.anchor = Anchor::weekday_ref(weekday);
  p.offset = Rational(week_shift * 168);
  return Instant{TimePoint::anchored(p)};
}

SemValue weekday_to_instant(std::span<const SemValue> c) {
  return TimeExpression{weekday_instant(std::get<WeekdayValue>(c[0]).weekday, 0)};
}

SemValue next_weekday_to_instant(std::span<const SemValue> c) {
  return TimeExpression{weekday_instant(std::get<WeekdayValue>(c[0]).weekday, 1)};
}

SemValue last_weekday_to_instant(std::span<const SemValue> c) {
  return TimeExpression{weekday_instant(std::get<WeekdayValue>(c[0]).weekday, -1)};
}

SemValue month_daynum_to_instant(std::span<const SemValue> c) {
  int month = std::get<MonthValue>(c[0]).month;
  const NumValue& day = std::get<NumValue>(c[1]);
  AnchoredPoint p;
  p.anchor = Anchor::month_ref(month);
  p.offset = (day.value - Rational(1)) * Rational(24);
  return TimeExpression{Instant{TimePoint::anchored(p)}};
}

SemValue instant_year_to_instant(std::span<const SemValue> c) {
  const Instant& in = as_instant(c[0]);
  int year = std::get<YearValue>(c[1]).year;
  if (in.point.is_anchored() &&
      in.point.anchored_point().anchor.kind == Anchor::Kind::kMonthRef) {
    AnchoredPoint p = in.point.anchored_point();
    DateTime date;
    date.year = year;
    date.month = p.anchor.index;
    p.anchor = Anchor::explicit_date(date);
    return TimeExpression{Instant{TimePoint::anchored(p)}};
  }
  return TimeExpression{in};
}

SemValue month_year_to_range(std::span<const SemValue> c) {
  int month = std::get<MonthValue>(c[0]).month;
  int year = std::get<YearValue>(c[1]).year;
  DateTime first;
  first.year = year;
  first.month = month;
  AnchoredPoint lower;
  lower.anchor = Anchor::explicit_date(first);
  AnchoredPoint upper = lower;
  int days = days_in_month(year, month);
  upper.offset = Rational(days * 24);
  return TimeExpression{Range{TimePoint::anchored(lower), TimePoint::anchored(upper),
                              length_from(Rational(days), UnitKind::kDay), std::nullopt}};
}

SemValue datelit_to_instant(std::span<const SemValue> c) {
  AnchoredPoint p;
  p.anchor = Anchor::explicit_date(std::get<DateValue>(c[0]).date);
  return TimeExpression{Instant{TimePoint::anchored(p)}};
}

SemValue year_to_range(std::span<const SemValue> c) {
  int year = std::get<YearValue>(c[0]).year;
  DateTime first;
  first.year = year;
  AnchoredPoint lower;
  lower.anchor = Anchor::explicit_date(first);
  // Upper bound via Dec 31 plus a day; keeps the anchor date inside the
  // supported calendar range even for the last supported year.
  DateTime last_day = first;
  last_day.month = 12;
  last_day.day = 31;
  AnchoredPoint upper;
  upper.anchor = Anchor::explicit_date(last_day);
  upper.offset = Rational(24);
  int days = is_leap_year(year) ? 366 : 365;
  return TimeExpression{Range{TimePoint::anchored(lower), TimePoint::anchored(upper),
                              length_from(Rational(days), UnitKind::kDay), std::nullopt}};
}

SemValue deictic_to_instant(std::span<const SemValue> c) {
  AnchoredPoint p;
  p.anchor = Anchor::present();
  switch (std::get<DeicticValue>(c[0]).kind) {
    case DeicticValue::Kind::kNow:
      break;
    case DeicticValue::Kind::kToday:
      p.snap = UnitKind::kDay;
      break;
    case DeicticValue::Kind::kYesterday:
      p.snap = UnitKind::kDay;
      p.steps = -1;
      break;
    case DeicticValue::Kind::kTomorrow:
      p.snap = UnitKind::kDay;
      p.steps = 1;
      break;
  }
  return TimeExpression{Instant{TimePoint::anchored(p)}};
}

SemValue for_range_to_interval(std::span<const SemValue> c) {
  const Range& r = as_range(c[0]);
  // Event lasts the whole range; exact duration materializes at resolution.
  return TimeExpression{Interval{r.lower, r.upper, std::nullopt}};
}

const std::map<std::string, CompositionRule>& registry() {
  static const std::map<std::string, CompositionRule> kRegistry = {
      {"num_unit_to_length", {2, Nonterminal::kLength, num_unit_to_length}},
      {"length_ago_to_instant", {1, Nonterminal::kInstant, length_ago_to_instant}},
      {"in_length_to_instant", {1, Nonterminal::kInstant, in_length_to_instant}},
      {"for_length_to_interval", {1, Nonterminal::kInterval, for_length_to_interval}},
      {"within_length_to_range", {1, Nonterminal::kRange, within_length_to_range}},
      {"before_instant_to_interval", {1, Nonterminal::kInterval, before_instant_to_interval}},
      {"after_instant_to_interval", {1, Nonterminal::kInterval, after_instant_to_interval}},
      {"merge_intervals", {2, Nonterminal::kInterval, merge_intervals}},
      {"from_range_to_interval", {1, Nonterminal::kInterval, from_range_to_interval}},
      {"until_range_to_interval", {1, Nonterminal::kInterval, until_range_to_interval}},
      {"in_month_to_range", {1, Nonterminal::kRange, month_to_range}},
      {"month_to_range", {1, Nonterminal::kRange, month_to_range}},
      {"wrap_range", {1, Nonterminal::kRange, wrap_range}},
      {"wrap_instant", {1, Nonterminal::kInstant, wrap_instant}},
      {"this_unit_to_range", {1, Nonterminal::kRange, this_unit_to_range}},
      {"next_unit_to_range", {1, Nonterminal::kRange, next_unit_to_range}},
      {"last_unit_to_range", {1, Nonterminal::kRange, last_unit_to_range}},
      {"the_nth_unit_to_range", {1, Nonterminal::kRange, the_nth_unit_to_range}},
      {"later_in_range", {1, Nonterminal::kRange, later_in_range}},
      {"weekday_to_instant", {1, Nonterminal::kInstant, weekday_to_instant}},
      {"next_weekday_to_instant", {1, Nonterminal::kInstant, next_weekday_to_instant}},
      {"last_weekday_to_instant", {1, Nonterminal::kInstant, last_weekday_to_instant}},
      {"month_daynum_to_instant", {2, Nonterminal::kInstant, month_daynum_to_instant}},
      {"instant_year_to_instant", {2, Nonterminal::kInstant, instant_year_to_instant}},
      {"month_year_to_range", {2, Nonterminal::kRange, month_year_to_range}},
      {"datelit_to_instant", {1, Nonterminal::kInstant, datelit_to_instant}},
      {"year_to_range", {1, Nonterminal::kRange, year_to_range}},
      {"deictic_to_instant", {1, Nonterminal::kInstant, deictic_to_instant}},
      {"for_range_to_interval", {1, Nonterminal::kInterval, for_range_to_interval}},
  };
  return kRegistry;
}

}  // namespace

const CompositionRule* find_composition(const std::string& tag) {
  auto it = registry().find(tag);
  return it == registry().end() ? nullptr : &it->second;
}

SemValue apply_rule(const std::string& tag, std::span<const SemValue> children) {
  const CompositionRule* rule = find_composition(tag);
  if (rule == nullptr) throw std::logic_error("apply_rule: unregistered semantic tag @" + tag);
  if (static_cast<int>(children.size()) != rule->arity)
    throw std::invalid_argument("apply_rule: @" + tag + " expects " + std::to_string(rule->arity) +
                                " children, got " + std::to_string(children.size()));
  return rule->fn(children);
}

SemValue leaf_value(Nonterminal cls, const std::string& surface) {
  switch (cls) {
    case Nonterminal::kNum: {
      auto v = Lexicon::numeral_value(surface);
      if (!v) throw std::invalid_argument("leaf_value: unreadable numeral " + surface);
      return NumValue{v->value, v->ordinal};
    }
    case Nonterminal::kUnit: {
      auto u = unit_from_name(Lexicon::fold(surface));
      if (!u) throw std::invalid_argument("leaf_value: unknown unit " + surface);
      return UnitValue{*u};
    }
    case Nonterminal::kMonthName: {
      auto m = Lexicon::month_index(surface);
      if (!m) throw std::invalid_argument("leaf_value: unknown month " + surface);
      return MonthValue{*m};
    }
    case Nonterminal::kWeekdayName: {
      auto w = Lexicon::weekday_index(surface);
      if (!w) throw std::invalid_argument("leaf_value: unknown weekday " + surface);
      return WeekdayValue{*w};
    }
    case Nonterminal::kYearNum: {
      auto y = Lexicon::year_value(Lexicon::fold(surface));
      if (!y) throw std::invalid_argument("leaf_value: unreadable year " + surface);
      return YearValue{*y};
    }
    case Nonterminal::kDateLit: {
      auto d = Lexicon::date_value(Lexicon::fold(surface));
      if (!d) throw std::invalid_argument("leaf_value: unreadable date " + surface);
      return DateValue{*d};
    }
    case Nonterminal::kDeictic: {
      std::string s = Lexicon::fold(surface);
      if (s == "now") return DeicticValue{DeicticValue::Kind::kNow};
      if (s == "today") return DeicticValue{DeicticValue::Kind::kToday};
      if (s == "yesterday") return DeicticValue{DeicticValue::Kind::kYesterday};
      if (s == "tomorrow") return DeicticValue{DeicticValue::Kind::kTomorrow};
      throw std::invalid_argument("leaf_value: unknown deictic " + surface);
    }
    default:
      return MarkerValue{cls};
  }
}

namespace {

SemValue compose_value(const ParseTree& tree) {
  if (tree.is_leaf()) return leaf_value(tree.root, tree.token.surface);
  std::vector<SemValue> contentful;
  for (const ParseTree& child : tree.children) {
    SemValue v = compose_value(child);
    if (!std::holds_alternative<MarkerValue>(v)) contentful.push_back(std::move(v));
  }
  return apply_rule(tree.rule->tag, contentful);
}

}  // namespace

TimeExpression compose(const ParseTree& tree) {
  SemValue value = compose_value(tree);
  if (const auto* expr = std::get_if<TimeExpression>(&value)) return *expr;
  if (const auto* len = std::get_if<LengthValue>(&value))
    return BareLength{len->length};
  throw std::invalid_argument("compose: tree root does not yield a time expression");
}

}  // namespace stage
