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

#include <optional>
#include <string>
#include <vector>

#include "stage/temporal.hpp"

namespace stage {

// The reduced boolean feature set handed to downstream models.
struct FeatureVector {
  bool is_point = false;
  bool start_is_interval = false;   // startpoint is the event's start, not a lower bound
  bool end_is_interval = false;     // endpoint is the event's end, not an upper bound
  bool length_is_interval = false;  // length is the event's exact duration

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// The six-relation inventory: after, before, simultaneous, includes,
// is-included, vague.
enum class RelationLabel { kAfter, kBefore, kSimultaneous, kIncludes, kIsIncluded, kVague };

const char* relation_symbol(RelationLabel r);  // "a", "b", "s", "i", "ii", "v"
std::optional<RelationLabel> relation_from_symbol(std::string_view s);
RelationLabel relation_inverse(RelationLabel r);

// A certain relation between two events, derived from their time cues.
// `relation` is never kVague: uncertain pairs are dropped, not labelled.
struct StageConstraint {
  std::string source;
  std::string target;
  RelationLabel relation = RelationLabel::kBefore;

  friend bool operator==(const StageConstraint&, const StageConstraint&) = default;
};

// Instant -> (T,T,T,F); Interval -> (F,T,T, length present);
// Range -> (F,F,F, inner length present). Throws std::invalid_argument for
// BareLength.
FeatureVector features(const TimeExpression& expr);

// The certain relation of a to b, when the normalized bounds prove one:
// before/after via disjointness, simultaneous/includes/is-included only
// between exact expressions. nullopt when nothing is provable.
std::optional<RelationLabel> derive_relation(const TimeExpression& a, const TimeExpression& b);

// derive_relation over each unordered pair once, oriented (earlier input
// event first); include_inverses adds the flipped orientation.
// Output sorted by (source, target). Duplicate ids throw.
std::vector<StageConstraint> generate_constraints(
    const std::vector<std::pair<std::string, TimeExpression>>& events,
    bool include_inverses = false);

// Interval-with-duration + Range over disjoint maximal spans collapse into a
// Range carrying the duration as inner_length ("for an hour sometime next
// week").
TimeExpression merge_interval_into_range(const Interval& interval, const Range& range);

}  // namespace stage
