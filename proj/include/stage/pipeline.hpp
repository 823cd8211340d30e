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

#include "stage/bridge.hpp"
#include "stage/chart.hpp"
#include "stage/evalkit.hpp"
#include "stage/grammar.hpp"
#include "stage/normalize.hpp"

namespace stage {

// One cue run end to end: tokenize, parse, select, compose, merge, resolve.
struct CueExtraction {
  enum class Status {
    kOk,          // a complete expression type
    kLengthOnly,  // only a bare duration parses
    kNoParse,     // nothing in the temporal vocabulary
  };
  Status status = Status::kNoParse;
  std::optional<TimeExpression> composed;  // before resolution
  std::optional<TimeExpression> resolved;  // unset when resolution failed
  std::string resolve_error;  // nonempty when the cue leaves the supported calendar
  std::pair<std::size_t, std::size_t> span{0, 0};  // chars within the cue text
};

CueExtraction extract_cue(const Grammar& grammar, const std::string& text,
                          const std::optional<DateTime>& dct);

// Per-event extraction over a document's attached cue windows; spans are
// absolute within the document text.
struct DocumentExtraction {
  struct Item {
    std::string event_id;
    std::pair<std::size_t, std::size_t> span{0, 0};
    CueExtraction cue;
  };
  std::vector<Item> items;
};

DocumentExtraction extract_document(const Grammar& grammar, const Document& doc);

// Event-pair certain relations from the events' attached cues.
std::vector<StageConstraint> document_constraints(const Grammar& grammar, const Document& doc,
                                                  bool include_inverses = false);

// Dummy-mediated rows for the ordering engine: each extracted expression
// becomes a node `prefix + event_id` standing for the cue's exact timeline
// extent, linked to its event and related to every other event/extent.
std::vector<StageConstraint> document_dummy_constraints(const Grammar& grammar,
                                                        const Document& doc,
                                                        const std::string& prefix = "t:");

// The exact timeline extent an expression occupies: ranges collapse to the
// interval between their outer bounds.
TimeExpression extent_of(const TimeExpression& expr);

}  // namespace stage
