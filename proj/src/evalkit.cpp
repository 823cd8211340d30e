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

#include "stage/evalkit.hpp"

#include <algorithm>
#include <stdexcept>

namespace stage {

void validate_document(const Document& doc) {
  if (doc.doc_id.empty()) throw std::invalid_argument("document without doc_id");
  std::set<std::string> ids;
  for (const auto& e : doc.events) {
    if (!ids.insert(e.id).second)
      throw std::invalid_argument(doc.doc_id + ": duplicate event id " + e.id);
    if (e.span.second > doc.text.size() || e.span.first > e.span.second)
      throw std::invalid_argument(doc.doc_id + ": event span out of bounds for " + e.id);
    if (e.cue_span &&
        (e.cue_span->second > doc.text.size() || e.cue_span->first > e.cue_span->second))
      throw std::invalid_argument(doc.doc_id + ": cue span out of bounds for " + e.id);
  }
  for (const auto& span : doc.gold_timex) {
    if (span.second > doc.text.size() || span.first > span.second)
      throw std::invalid_argument(doc.doc_id + ": gold timex span out of bounds");
  }
  for (const auto& t : doc.gold_tlinks) {
    if (!ids.contains(t.source) || !ids.contains(t.target))
      throw std::invalid_argument(doc.doc_id + ": tlink over unknown event ids " + t.source +
                                  "," + t.target);
  }
}

const char* verdict_name(MatchVerdict v) {
  switch (v) {
    case MatchVerdict::kExactMatch:
      return "exact";
    case MatchVerdict::kExtendedMatch:
      return "extended";
    case MatchVerdict::kMiss:
      return "miss";
  }
  return "?";
}

std::set<std::string> meaning_preserving_words(const Lexicon& lexicon,
                                               const std::vector<std::string>& extra) {
  std::set<std::string> out;
  for (const auto& [surface, classes] : lexicon.entries()) {
    bool functional = std::all_of(classes.begin(), classes.end(), is_function_word_class);
    if (functional && !classes.empty()) out.insert(surface);
  }
  for (const auto& w : extra) out.insert(Lexicon::fold(w));
  return out;
}

namespace {

std::vector<std::string> folded_tokens(const std::string& text, const Lexicon& lexicon) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(text, lexicon)) out.push_back(Lexicon::fold(t.surface));
  return out;
}

}  // namespace

MatchVerdict relaxed_match(const std::string& gold_span, const std::string& sys_span,
                           const Lexicon& lexicon, const std::set<std::string>& whitelist) {
  std::vector<std::string> gold = folded_tokens(gold_span, lexicon);
  std::vector<std::string> sys = folded_tokens(sys_span, lexicon);
  if (gold == sys) return MatchVerdict::kExactMatch;
  if (gold.empty() || sys.size() < gold.size()) return MatchVerdict::kMiss;
  for (std::size_t at = 0; at + gold.size() <= sys.size(); ++at) {
    bool contiguous = true;
    for (std::size_t k = 0; k < gold.size(); ++k) {
      if (sys[at + k] != gold[k]) {
        contiguous = false;
        break;
      }
    }
    if (!contiguous) continue;
    bool extras_preserving = true;
    for (std::size_t k = 0; k < sys.size(); ++k) {
      if (k >= at && k < at + gold.size()) continue;
      if (!whitelist.contains(sys[k])) {
        extras_preserving = false;
        break;
      }
    }
    if (extras_preserving) return MatchVerdict::kExtendedMatch;
  }
  return MatchVerdict::kMiss;
}

ExtractionReport extraction_report(
    const std::vector<Document>& corpus,
    const std::map<std::string, std::vector<std::pair<std::size_t, std::size_t>>>& system_spans,
    const Lexicon& lexicon) {
  std::set<std::string> whitelist = meaning_preserving_words(lexicon);
  ExtractionReport report;
  for (const Document& doc : corpus) {
    const std::vector<std::pair<std::size_t, std::size_t>>* spans = nullptr;
    auto it = system_spans.find(doc.doc_id);
    if (it != system_spans.end()) spans = &it->second;
    for (const auto& gold : doc.gold_timex) {
      ++report.gold_count;
      MatchVerdict best = MatchVerdict::kMiss;
      if (spans != nullptr) {
        std::string gold_text = doc.text.substr(gold.first, gold.second - gold.first);
        for (const auto& sys : *spans) {
          if (sys.second <= gold.first || gold.second <= sys.first) continue;  // no overlap
          std::string sys_text = doc.text.substr(sys.first, sys.second - sys.first);
          MatchVerdict v = relaxed_match(gold_text, sys_text, lexicon, whitelist);
          if (v == MatchVerdict::kExactMatch) {
            best = v;
            break;
          }
          if (v == MatchVerdict::kExtendedMatch) best = v;
        }
      }
      if (best == MatchVerdict::kExactMatch) ++report.exact;
      if (best == MatchVerdict::kExtendedMatch) ++report.extended;
    }
  }
  return report;
}

OrderingMetrics ordering_metrics(const std::vector<TlinkRecord>& pred,
                                 const std::vector<TlinkRecord>& gold) {
  auto canonical = [](const TlinkRecord& t) {
    TlinkRecord c = t;
    if (c.target < c.source) {
      std::swap(c.source, c.target);
      c.relation = relation_inverse(c.relation);
    }
    return c;
  };
  std::map<std::pair<std::string, std::string>, RelationLabel> pred_map;
  for (const auto& t : pred) {
    TlinkRecord c = canonical(t);
    pred_map[{c.source, c.target}] = c.relation;
  }
  std::map<std::pair<std::string, std::string>, RelationLabel> gold_map;
  for (const auto& t : gold) {
    TlinkRecord c = canonical(t);
    gold_map[{c.source, c.target}] = c.relation;
  }

  OrderingMetrics m;
  m.predicted = pred_map.size();
  m.gold = gold_map.size();
  for (const auto& [pair, rel] : gold_map) {
    auto it = pred_map.find(pair);
    if (it != pred_map.end() && it->second == rel) ++m.correct;
  }
  if (m.gold == 0) {
    m.empty_gold_warning = true;
    m.recall = 0;
  } else {
    m.recall = static_cast<double>(m.correct) / static_cast<double>(m.gold);
  }
  m.precision =
      m.predicted == 0 ? 0 : static_cast<double>(m.correct) / static_cast<double>(m.predicted);
  m.f1 = (m.precision + m.recall) == 0 ? 0
                                       : 2 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

}  // namespace stage
