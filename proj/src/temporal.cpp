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

#include "stage/temporal.hpp"

#include <array>

namespace stage {

namespace {

const char* kWeekdayNames[7] = {"monday", "tuesday",  "wednesday", "thursday",
                                "friday", "saturday", "sunday"};

// Conservative hour extent of one calendar unit: [shortest, longest].
void unit_hour_bounds(UnitKind unit, Rational* lo, Rational* hi) {
  switch (unit) {
    case UnitKind::kMonth:
      *lo = Rational(28 * 24);
      *hi = Rational(31 * 24);
      return;
    case UnitKind::kQuarter:
      *lo = Rational(90 * 24);
      *hi = Rational(92 * 24);
      return;
    case UnitKind::kYear:
      *lo = Rational(365 * 24);
      *hi = Rational(366 * 24);
      return;
    case UnitKind::kDecade:
      *lo = Rational(3650 * 24);
      *hi = Rational(3654 * 24);
      return;
    default:
      *lo = *hi = unit_to_hours(unit);
      return;
  }
}

}  // namespace

Rational unit_to_hours(UnitKind unit) {
  switch (unit) {
    case UnitKind::kSecond:
      return Rational(1, 3600);
    case UnitKind::kMinute:
      return Rational(1, 60);
    case UnitKind::kHour:
      return Rational(1);
    case UnitKind::kDay:
      return Rational(24);
    case UnitKind::kWeek:
      return Rational(168);
    case UnitKind::kMonth:
      return Rational(720);
    case UnitKind::kQuarter:
      return Rational(2160);
    case UnitKind::kYear:
      return Rational(8760);
    case UnitKind::kDecade:
      return Rational(87600);
  }
  throw std::invalid_argument("unit_to_hours: unknown unit");
}

const char* unit_name(UnitKind unit) {
  switch (unit) {
    case UnitKind::kSecond:
      return "second";
    case UnitKind::kMinute:
      return "minute";
    case UnitKind::kHour:
      return "hour";
    case UnitKind::kDay:
      return "day";
    case UnitKind::kWeek:
      return "week";
    case UnitKind::kMonth:
      return "month";
    case UnitKind::kQuarter:
      return "quarter";
    case UnitKind::kYear:
      return "year";
    case UnitKind::kDecade:
      return "decade";
  }
  return "?";
}

std::optional<UnitKind> unit_from_name(std::string_view name) {
  static constexpr std::array<UnitKind, 9> kAll = {
      UnitKind::kSecond, UnitKind::kMinute,  UnitKind::kHour,
      UnitKind::kDay,    UnitKind::kWeek,    UnitKind::kMonth,
      UnitKind::kQuarter, UnitKind::kYear,   UnitKind::kDecade};
  std::string_view base = name;
  if (base.size() > 1 && base.back() == 's') base.remove_suffix(1);
  for (UnitKind u : kAll) {
    if (base == unit_name(u)) return u;
  }
  return std::nullopt;
}

Length length_from(const Rational& number, UnitKind unit) {
  if (number.is_negative()) throw std::invalid_argument("length_from: negative count");
  return Length{number, unit, number * unit_to_hours(unit)};
}

void AnchoredPoint::offset_bounds(Rational* lo, Rational* hi) const {
  *lo = offset;
  *hi = offset;
  if (snap) {
    Rational unit_lo, unit_hi;
    unit_hour_bounds(*snap, &unit_lo, &unit_hi);
    // Snapping down moves back by up to one unit.
    *lo -= unit_hi;
    // Each calendar step spans between the shortest and longest unit extent.
    if (steps >= 0) {
      *lo += Rational(steps) * unit_lo;
      *hi += Rational(steps) * unit_hi;
    } else {
      *lo += Rational(steps) * unit_hi;
      *hi += Rational(steps) * unit_lo;
    }
  }
  if (sub_unit) {
    Rational unit_lo, unit_hi;
    unit_hour_bounds(*sub_unit, &unit_lo, &unit_hi);
    if (sub_steps >= 0) {
      *lo += Rational(sub_steps) * unit_lo;
      *hi += Rational(sub_steps) * unit_hi;
    } else {
      *lo += Rational(sub_steps) * unit_hi;
      *hi += Rational(sub_steps) * unit_lo;
    }
  }
}

TimePoint TimePoint::plus_hours(const Rational& hours) const {
  if (is_known()) return known(position() + hours);
  if (is_anchored()) {
    AnchoredPoint p = anchored_point();
    p.offset += hours;
    p.via.reset();  // shifted distance no longer matches the surface length
    return anchored(std::move(p));
  }
  return unknown();
}

std::optional<std::strong_ordering> try_compare(const TimePoint& a, const TimePoint& b) {
  if (a.is_known() && b.is_known()) return a.position() <=> b.position();
  if (a.is_anchored() && b.is_anchored()) {
    const AnchoredPoint& pa = a.anchored_point();
    const AnchoredPoint& pb = b.anchored_point();
    if (!(pa.anchor == pb.anchor)) return std::nullopt;
    Rational alo, ahi, blo, bhi;
    pa.offset_bounds(&alo, &ahi);
    pb.offset_bounds(&blo, &bhi);
    if (alo == ahi && blo == bhi) return alo <=> blo;  // both offsets exact
    if (ahi < blo) return std::strong_ordering::less;
    if (bhi < alo) return std::strong_ordering::greater;
    return std::nullopt;  // bounds overlap, order not provable
  }
  return std::nullopt;
}

std::strong_ordering compare_known(const TimePoint& a, const TimePoint& b) {
  auto ord = try_compare(a, b);
  if (!ord) throw IncomparableError("compare_known: points are not mutually comparable");
  return *ord;
}

void check_invariants(const TimeExpression& expr) {
  if (const auto* iv = std::get_if<Interval>(&expr)) {
    if (iv->length && iv->start.is_known() && iv->end.is_known()) {
      if (iv->end.position() - iv->start.position() != iv->length->hours)
        throw std::invalid_argument("Interval: end - start != length");
    }
    if (iv->start.is_known() && iv->end.is_known() && iv->end.position() < iv->start.position())
      throw std::invalid_argument("Interval: end precedes start");
  } else if (const auto* rg = std::get_if<Range>(&expr)) {
    if (rg->lower.is_known() && rg->upper.is_known() &&
        rg->upper.position() < rg->lower.position())
      throw std::invalid_argument("Range: upper precedes lower");
  }
}

std::string render(const Length& length) {
  return "Length(" + length.number.str() + "," + unit_name(length.unit) + ")";
}

namespace {

std::string render_anchor(const Anchor& anchor) {
  switch (anchor.kind) {
    case Anchor::Kind::kPresent:
      return "present";
    case Anchor::Kind::kDate:
      return format_iso_datetime(anchor.date);
    case Anchor::Kind::kMonthRef:
      return "month:" + std::to_string(anchor.index);
    case Anchor::Kind::kWeekdayRef:
      return std::string("weekday:") + kWeekdayNames[anchor.index];
  }
  return "?";
}

std::string signed_hours(const Rational& r) {
  return (r.is_negative() ? "" : "+") + r.str() + "h";
}

}  // namespace

std::string render_point(const TimePoint& point) {
  if (point.is_unknown()) return "Unknown";
  if (point.is_known()) {
    if (auto dt = date_from_position(point.position())) return "at=" + format_iso_datetime(*dt);
    return "at=" + point.position().str() + "h";
  }
  const AnchoredPoint& p = point.anchored_point();
  std::string out = "anchor=" + render_anchor(p.anchor);
  if (p.snap) {
    out += ",snap=";
    out += unit_name(*p.snap);
    if (p.steps != 0) out += ",steps=" + std::string(p.steps > 0 ? "+" : "") + std::to_string(p.steps);
  }
  if (p.sub_unit && p.sub_steps != 0) {
    out += ",sub=" + std::string(p.sub_steps > 0 ? "+" : "") + std::to_string(p.sub_steps) +
           unit_name(*p.sub_unit);
  }
  if (p.via) {
    // Distances render through the surface length; past offsets carry no
    // sign, mirroring the "dist from anchor" walkthrough form.
    out += ",dist=" + std::string(p.offset.is_negative() ? "" : "+") + render(*p.via);
  } else if (!p.offset.is_zero()) {
    out += ",offset=" + signed_hours(p.offset);
  }
  return out;
}

namespace {

// Endpoints inside Interval/Range render as nested instants.
std::string render_endpoint(const TimePoint& point) {
  if (point.is_unknown()) return "Unknown";
  return "Instant(" + render_point(point) + ")";
}

std::string render_opt_length(const std::optional<Length>& length) {
  return length ? render(*length) : "Unknown";
}

}  // namespace

std::string render(const TimeExpression& expr) {
  if (const auto* in = std::get_if<Instant>(&expr)) {
    return "Instant(" + render_point(in->point) + ")";
  }
  if (const auto* iv = std::get_if<Interval>(&expr)) {
    return "Interval(start=" + render_endpoint(iv->start) + ",end=" + render_endpoint(iv->end) +
           ",length=" + render_opt_length(iv->length) + ")";
  }
  if (const auto* rg = std::get_if<Range>(&expr)) {
    return "Range(lower=" + render_endpoint(rg->lower) + ",upper=" + render_endpoint(rg->upper) +
           ",span=" + render_opt_length(rg->span_length) +
           ",inner=" + render_opt_length(rg->inner_length) + ")";
  }
  return render(std::get<BareLength>(expr).length);
}

}  // namespace stage
