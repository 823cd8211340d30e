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
#include <set>
#include <string>
#include <vector>

#include "stage/bridge.hpp"
#include "stage/calendar.hpp"
#include "stage/ilp.hpp"
#include "stage/lexicon.hpp"

namespace stage {

struct EventRecord {
  std::string id;
  std::pair<std::size_t, std::size_t> span;                    // event trigger chars
  std::optional<std::pair<std::size_t, std::size_t>> cue_span; // attached time cue window
};

struct TlinkRecord {
  std::string source;
  std::string target;
  RelationLabel relation = RelationLabel::kBefore;
};

struct Document {
  std::string doc_id;
  std::optional<DateTime> dct;
  std::string text;
  std::vector<EventRecord> events;
  std::vector<std::pair<std::size_t, std::size_t>> gold_timex;
  std::vector<TlinkRecord> gold_tlinks;
};

// Spans within bounds, event ids unique. Throws std::invalid_argument.
void validate_document(const Document& doc);

enum class MatchVerdict { kExactMatch, kExtendedMatch, kMiss };

const char* verdict_name(MatchVerdict v);

// Words a system span may add to a gold span without changing its meaning:
// the function-word vocabulary plus determiners. Extendable via `extra`.
std::set<std::string> meaning_preserving_words(const Lexicon& lexicon,
                                               const std::vector<std::string>& extra = {"the", "a",
                                                                                        "an"});

// Exact on identical token sequences (case-folded); extended when sys
// contains gold contiguously and every added token is meaning-preserving.
MatchVerdict relaxed_match(const std::string& gold_span, const std::string& sys_span,
                           const Lexicon& lexicon,
                           const std::set<std::string>& whitelist);

struct ExtractionReport {
  std::size_t gold_count = 0;
  std::size_t exact = 0;
  std::size_t extended = 0;
  double match_rate() const {  // "=/+"
    return gold_count == 0 ? 0.0 : static_cast<double>(exact + extended) / gold_count;
  }
  double extended_rate() const {  // "+"
    return gold_count == 0 ? 0.0 : static_cast<double>(extended) / gold_count;
  }
};

// Scores system spans against each document's gold time expressions; every
// gold span takes its best verdict over overlapping system spans.
ExtractionReport extraction_report(
    const std::vector<Document>& corpus,
    const std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>& system_spans,
    const Lexicon& lexicon);

struct OrderingMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  std::size_t correct = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;
  bool empty_gold_warning = false;
};

// Micro P/R/F1 over gold tlinks; orientation-normalized so (A,B,b) and
// (B,A,a) count as the same link.
OrderingMetrics ordering_metrics(const std::vector<TlinkRecord>& pred,
                                 const std::vector<TlinkRecord>& gold);

}  // namespace stage
