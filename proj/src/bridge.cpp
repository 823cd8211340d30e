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

#include "stage/bridge.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stage {

const char* relation_symbol(RelationLabel r) {
  switch (r) {
    case RelationLabel::kAfter:
      return "a";
    case RelationLabel::kBefore:
      return "b";
    case RelationLabel::kSimultaneous:
      return "s";
    case RelationLabel::kIncludes:
      return "i";
    case RelationLabel::kIsIncluded:
      return "ii";
    case RelationLabel::kVague:
      return "v";
  }
  return "?";
}

std::optional<RelationLabel> relation_from_symbol(std::string_view s) {
  if (s == "a") return RelationLabel::kAfter;
  if (s == "b") return RelationLabel::kBefore;
  if (s == "s") return RelationLabel::kSimultaneous;
  if (s == "i") return RelationLabel::kIncludes;
  if (s == "ii") return RelationLabel::kIsIncluded;
  if (s == "v") return RelationLabel::kVague;
  return std::nullopt;
}

RelationLabel relation_inverse(RelationLabel r) {
  switch (r) {
    case RelationLabel::kAfter:
      return RelationLabel::kBefore;
    case RelationLabel::kBefore:
      return RelationLabel::kAfter;
    case RelationLabel::kIncludes:
      return RelationLabel::kIsIncluded;
    case RelationLabel::kIsIncluded:
      return RelationLabel::kIncludes;
    default:
      return r;  // s and v are self-inverse
  }
}

FeatureVector features(const TimeExpression& expr) {
  if (std::holds_alternative<BareLength>(expr))
    throw std::invalid_argument("features: bare lengths are not a complete expression type");
  if (std::holds_alternative<Instant>(expr)) {
    return FeatureVector{true, true, true, false};
  }
  if (const auto* iv = std::get_if<Interval>(&expr)) {
    return FeatureVector{false, true, true, iv->length.has_value()};
  }
  const Range& rg = std::get<Range>(expr);
  return FeatureVector{false, false, false, rg.inner_length.has_value()};
}

namespace {

// Bounds of the event's start and end points implied by an expression.
// Instants/intervals give exact (or unknown) endpoints; ranges give
// one-sided bounds tightened by an exact inner duration when present.
struct EventWindow {
  TimePoint start_lo;  // earliest possible event start
  TimePoint start_hi;  // latest possible event start
  TimePoint end_lo;    // earliest possible event end
  TimePoint end_hi;    // latest possible event end
  bool exact = false;  // endpoints are the event's actual start/end
};

EventWindow window_of(const TimeExpression& expr) {
  EventWindow w;
  if (const auto* in = std::get_if<Instant>(&expr)) {
    w.start_lo = w.start_hi = w.end_lo = w.end_hi = in->point;
    w.exact = !in->point.is_unknown();
    return w;
  }
  if (const auto* iv = std::get_if<Interval>(&expr)) {
    w.start_lo = w.start_hi = iv->start;
    w.end_lo = w.end_hi = iv->end;
    w.exact = !iv->start.is_unknown() && !iv->end.is_unknown();
    return w;
  }
  if (const auto* rg = std::get_if<Range>(&expr)) {
    w.start_lo = rg->lower;
    w.end_hi = rg->upper;
    if (rg->inner_length) {
      w.start_hi = rg->upper.plus_hours(-rg->inner_length->hours);
      w.end_lo = rg->lower.plus_hours(rg->inner_length->hours);
    } else {
      w.start_hi = rg->upper;
      w.end_lo = rg->lower;
    }
    return w;
  }
  throw std::invalid_argument("derive_relation: bare lengths carry no timeline position");
}

bool provably_less(const TimePoint& a, const TimePoint& b) {
  if (a.is_unknown() || b.is_unknown()) return false;
  auto ord = try_compare(a, b);
  return ord && *ord == std::strong_ordering::less;
}

bool provably_equal(const TimePoint& a, const TimePoint& b) {
  if (a.is_unknown() || b.is_unknown()) return false;
  auto ord = try_compare(a, b);
  return ord && *ord == std::strong_ordering::equal;
}

}  // namespace

std::optional<RelationLabel> derive_relation(const TimeExpression& a, const TimeExpression& b) {
  EventWindow wa = window_of(a);
  EventWindow wb = window_of(b);

  // Disjointness: a's latest possible end strictly precedes b's earliest
  // possible start (and symmetrically).
  if (provably_less(wa.end_hi, wb.start_lo)) return RelationLabel::kBefore;
  if (provably_less(wb.end_hi, wa.start_lo)) return RelationLabel::kAfter;

  if (wa.exact && wb.exact) {
    if (provably_equal(wa.start_lo, wb.start_lo) && provably_equal(wa.end_hi, wb.end_hi))
      return RelationLabel::kSimultaneous;
    if (provably_less(wa.start_lo, wb.start_lo) && provably_less(wb.end_hi, wa.end_hi))
      return RelationLabel::kIncludes;
    if (provably_less(wb.start_lo, wa.start_lo) && provably_less(wa.end_hi, wb.end_hi))
      return RelationLabel::kIsIncluded;
  }
  return std::nullopt;
}

std::vector<StageConstraint> generate_constraints(
    const std::vector<std::pair<std::string, TimeExpression>>& events, bool include_inverses) {
  std::set<std::string> ids;
  for (const auto& [id, expr] : events) {
    if (!ids.insert(id).second)
      throw std::invalid_argument("generate_constraints: duplicate event id " + id);
  }
  std::vector<StageConstraint> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    for (std::size_t j = i + 1; j < events.size(); ++j) {
      auto rel = derive_relation(events[i].second, events[j].second);
      if (!rel) continue;
      out.push_back(StageConstraint{events[i].first, events[j].first, *rel});
      if (include_inverses)
        out.push_back(StageConstraint{events[j].first, events[i].first, relation_inverse(*rel)});
    }
  }
  std::sort(out.begin(), out.end(), [](const StageConstraint& x, const StageConstraint& y) {
    if (x.source != y.source) return x.source < y.source;
    return x.target < y.target;
  });
  return out;
}

TimeExpression merge_interval_into_range(const Interval& interval, const Range& range) {
  Range merged = range;
  if (interval.length) merged.inner_length = interval.length;
  return merged;
}

}  // namespace stage
