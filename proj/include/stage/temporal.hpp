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

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "stage/calendar.hpp"
#include "stage/rational.hpp"

namespace stage {

// Thrown when two timeline points have no defined order (unknown points, or
// points hanging off different anchors before normalization).
struct IncomparableError : std::domain_error {
  using std::domain_error::domain_error;
};

// Fixed hour factor per unit. Months/quarters/years/decades use the
// conventional 30/90/365/3650-day factors; calendar-exact lengths apply only
// once an explicit date is resolved.
Rational unit_to_hours(UnitKind unit);

const char* unit_name(UnitKind unit);                       // "day", "week", ...
std::optional<UnitKind> unit_from_name(std::string_view);   // singular or plural

// A duration: a count of some unit, with the hour conversion carried along.
struct Length {
  Rational number;
  UnitKind unit = UnitKind::kHour;
  Rational hours;

  friend bool operator==(const Length&, const Length&) = default;
};

// Throws std::invalid_argument for negative counts.
Length length_from(const Rational& number, UnitKind unit);

// What an unresolved point hangs off.
struct Anchor {
  enum class Kind {
    kPresent,     // document creation time
    kDate,        // explicit calendar date-time
    kMonthRef,    // named month, year not yet known
    kWeekdayRef,  // named weekday, week not yet known
  };
  Kind kind = Kind::kPresent;
  DateTime date;  // kDate only
  int index = 0;  // kMonthRef: 1..12, kWeekdayRef: 0=Monday..6

  static Anchor present() { return {}; }
  static Anchor explicit_date(const DateTime& dt) { return {Kind::kDate, dt, 0}; }
  static Anchor month_ref(int month) { return {Kind::kMonthRef, {}, month}; }
  static Anchor weekday_ref(int weekday) { return {Kind::kWeekdayRef, {}, weekday}; }

  friend bool operator==(const Anchor&, const Anchor&) = default;
};

// An unresolved point: anchor, then optional snap to a unit boundary, then
// calendar steps, then a plain hour offset. Resolution replays these against
// a concrete date; before resolution the point is comparable only with
// points on the same anchor, through conservative offset bounds.
struct AnchoredPoint {
  Anchor anchor;
  std::optional<UnitKind> snap;
  int steps = 0;  // calendar steps of `snap` unit, applied after snapping
  std::optional<UnitKind> sub_unit;
  int sub_steps = 0;  // finer steps ("the fourth quarter" = year start + 3 quarters)
  Rational offset;    // plain hours, applied last
  std::optional<Length> via;  // surface length behind `offset`, kept for rendering

  friend bool operator==(const AnchoredPoint&, const AnchoredPoint&) = default;

  // Conservative [lo, hi] hour bounds of the resolved offset relative to the
  // anchor's base position, valid for every admissible document date.
  void offset_bounds(Rational* lo, Rational* hi) const;
};

struct KnownPoint {
  Rational position;  // hours from the 2000-01-01T00:00 epoch
  friend bool operator==(const KnownPoint&, const KnownPoint&) = default;
};

struct UnknownPoint {
  friend bool operator==(const UnknownPoint&, const UnknownPoint&) = default;
};

class TimePoint {
 public:
  TimePoint() : rep_(UnknownPoint{}) {}

  static TimePoint known(const Rational& position) { return TimePoint(KnownPoint{position}); }
  static TimePoint anchored(AnchoredPoint p) { return TimePoint(std::move(p)); }
  static TimePoint unknown() { return TimePoint(); }

  bool is_known() const { return std::holds_alternative<KnownPoint>(rep_); }
  bool is_anchored() const { return std::holds_alternative<AnchoredPoint>(rep_); }
  bool is_unknown() const { return std::holds_alternative<UnknownPoint>(rep_); }

  const Rational& position() const { return std::get<KnownPoint>(rep_).position; }
  const AnchoredPoint& anchored_point() const { return std::get<AnchoredPoint>(rep_); }

  // Shifts the point along the timeline; Unknown stays Unknown.
  TimePoint plus_hours(const Rational& hours) const;

  friend bool operator==(const TimePoint&, const TimePoint&) = default;

 private:
  explicit TimePoint(KnownPoint p) : rep_(p) {}
  explicit TimePoint(AnchoredPoint p) : rep_(std::move(p)) {}

  std::variant<UnknownPoint, KnownPoint, AnchoredPoint> rep_;
};

// Total order on Known points; anchored points sharing an anchor compare via
// conservative offset bounds. Throws IncomparableError otherwise (and when
// bounds overlap without being equal exact offsets).
std::strong_ordering compare_known(const TimePoint& a, const TimePoint& b);

// Non-throwing variant used by the relation logic.
std::optional<std::strong_ordering> try_compare(const TimePoint& a, const TimePoint& b);

// The three complete expression types plus a bare duration.
struct Instant {
  TimePoint point;
  friend bool operator==(const Instant&, const Instant&) = default;
};

// start/end are the event's actual endpoints (possibly unknown).
struct Interval {
  TimePoint start;
  TimePoint end;
  std::optional<Length> length;
  friend bool operator==(const Interval&, const Interval&) = default;
};

// lower/upper are outer bounds the event falls within; inner_length, when
// present, is the event's exact duration inside those bounds.
struct Range {
  TimePoint lower;
  TimePoint upper;
  std::optional<Length> span_length;
  std::optional<Length> inner_length;
  friend bool operator==(const Range&, const Range&) = default;
};

struct BareLength {
  Length length;
  friend bool operator==(const BareLength&, const BareLength&) = default;
};

using TimeExpression = std::variant<Instant, Interval, Range, BareLength>;

// Interval endpoints must agree with a present length; Range bounds must be
// ordered when both known. Throws std::invalid_argument on violation.
void check_invariants(const TimeExpression& expr);

// Canonical text rendering used by golden tests and the extract output,
// e.g. Instant(anchor=present,dist=Length(3,day)).
std::string render(const TimeExpression& expr);
std::string render(const Length& length);
std::string render_point(const TimePoint& point);  // bare point form

}  // namespace stage
