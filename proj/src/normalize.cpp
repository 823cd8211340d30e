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

#include "stage/normalize.hpp"

namespace stage {

namespace {

// Base civil date the anchored point replays its snap/steps against, or
// nullopt when the anchor needs a document date that is missing.
std::optional<DateTime> anchor_base(const Anchor& anchor, const std::optional<DateTime>& dct) {
  switch (anchor.kind) {
    case Anchor::Kind::kDate:
      return anchor.date;
    case Anchor::Kind::kPresent:
      return dct;
    case Anchor::Kind::kMonthRef: {
      if (!dct) return std::nullopt;
      // Nearest occurrence, preferring the document's calendar year.
      DateTime base;
      base.year = dct->year;
      base.month = anchor.index;
      base.day = 1;
      return base;
    }
    case Anchor::Kind::kWeekdayRef: {
      if (!dct) return std::nullopt;
      DateTime monday = snap_down(*dct, UnitKind::kWeek);
      return advance(monday, UnitKind::kDay, anchor.index);
    }
  }
  return std::nullopt;
}

// Re-resolution base one cycle later, used to keep interval/range endpoints
// ordered when year-free references straddle a boundary.
std::optional<DateTime> bumped_base(const Anchor& anchor, const std::optional<DateTime>& dct) {
  auto base = anchor_base(anchor, dct);
  if (!base) return std::nullopt;
  switch (anchor.kind) {
    case Anchor::Kind::kMonthRef:
      return advance(*base, UnitKind::kYear, 1);
    case Anchor::Kind::kWeekdayRef:
      return advance(*base, UnitKind::kWeek, 1);
    default:
      return std::nullopt;  // only year-free anchors may be bumped
  }
}

TimePoint resolve_from_base(const AnchoredPoint& p, const DateTime& base) {
  DateTime at = base;
  if (p.snap) {
    at = snap_down(at, *p.snap);
    if (p.steps != 0) at = advance(at, *p.snap, p.steps);
  }
  if (p.sub_unit && p.sub_steps != 0) at = advance(at, *p.sub_unit, p.sub_steps);
  return TimePoint::known(position_of(at) + p.offset);
}

TimePoint resolve_impl(const TimePoint& point, const std::optional<DateTime>& dct) {
  if (!point.is_anchored()) return point;
  const AnchoredPoint& p = point.anchored_point();
  auto base = anchor_base(p.anchor, dct);
  if (!base) return point;  // relative cue without a document date
  return resolve_from_base(p, *base);
}

// Resolves an endpoint pair, advancing a year-free second endpoint by one
// cycle when it would otherwise land before the first.
void resolve_pair(const TimePoint& first, const TimePoint& second,
                  const std::optional<DateTime>& dct, TimePoint* first_out,
                  TimePoint* second_out) {
  *first_out = resolve_impl(first, dct);
  *second_out = resolve_impl(second, dct);
  if (!first_out->is_known() || !second_out->is_known()) return;
  if (!(second_out->position() < first_out->position())) return;
  if (!second.is_anchored()) return;
  auto bumped = bumped_base(second.anchored_point().anchor, dct);
  if (!bumped) return;
  TimePoint rebased = resolve_from_base(second.anchored_point(), *bumped);
  if (!(rebased.position() < first_out->position())) *second_out = rebased;
}

std::optional<Length> derive_length(const TimePoint& start, const TimePoint& end,
                                    const std::optional<Length>& existing) {
  if (existing) return existing;
  if (!start.is_known() || !end.is_known()) return std::nullopt;
  Rational diff = end.position() - start.position();
  if (diff.is_negative()) return std::nullopt;
  return length_from(diff, UnitKind::kHour);
}

}  // namespace

TimePoint resolve_point(const TimePoint& point, const std::optional<DateTime>& dct) {
  return resolve_impl(point, dct);
}

TimeExpression resolve(const TimeExpression& expr, const std::optional<DateTime>& dct) {
  if (const auto* in = std::get_if<Instant>(&expr)) {
    return Instant{resolve_impl(in->point, dct)};
  }
  if (const auto* iv = std::get_if<Interval>(&expr)) {
    Interval out;
    resolve_pair(iv->start, iv->end, dct, &out.start, &out.end);
    out.length = iv->length;
    // A single missing endpoint is recoverable from the other one plus the
    // duration.
    if (out.length) {
      if (out.end.is_unknown() && !out.start.is_unknown())
        out.end = out.start.plus_hours(out.length->hours);
      else if (out.start.is_unknown() && !out.end.is_unknown())
        out.start = out.end.plus_hours(-out.length->hours);
    }
    out.length = derive_length(out.start, out.end, out.length);
    return out;
  }
  if (const auto* rg = std::get_if<Range>(&expr)) {
    Range out;
    resolve_pair(rg->lower, rg->upper, dct, &out.lower, &out.upper);
    out.inner_length = rg->inner_length;
    out.span_length = derive_length(out.lower, out.upper, rg->span_length);
    return out;
  }
  return expr;  // BareLength
}

}  // namespace stage
