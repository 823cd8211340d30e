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

#include "stage/pipeline.hpp"

#include <algorithm>

#include "stage/compose.hpp"

namespace stage {

namespace {

std::pair<std::size_t, std::size_t> tree_char_span(const ParseTree& tree,
                                                   const std::vector<Token>& tokens) {
  return {tokens[tree.span.first].begin, tokens[tree.span.second - 1].end};
}

// Cues can step outside the supported calendar once anchored to a concrete
// date; a corpus run degrades that cue instead of aborting.
void resolve_into(CueExtraction* out, const std::optional<DateTime>& dct) {
  try {
    out->resolved = resolve(*out->composed, dct);
  } catch (const std::invalid_argument& e) {
    out->resolved.reset();
    out->resolve_error = e.what();
  }
}

}  // namespace

CueExtraction extract_cue(const Grammar& grammar, const std::string& text,
                          const std::optional<DateTime>& dct) {
  CueExtraction out;
  std::vector<Token> tokens = tokenize(text, grammar.lexicon());
  if (tokens.empty()) return out;

  Chart chart = parse_all(tokens, grammar);
  std::vector<ParseTree> maximal = select_all_maximal(chart);

  if (maximal.empty()) {
    // No complete type anywhere; fall back to the widest bare duration.
    auto length_tree = select_widest(chart, Nonterminal::kLength);
    if (!length_tree) return out;
    out.status = CueExtraction::Status::kLengthOnly;
    out.composed = compose(*length_tree);
    out.span = tree_char_span(*length_tree, tokens);
    resolve_into(&out, dct);
    return out;
  }

  if (maximal.size() == 2) {
    // "for an hour sometime next week": a duration-only interval next to a
    // range merges into one range carrying the duration as inner length.
    TimeExpression first = compose(maximal[0]);
    TimeExpression second = compose(maximal[1]);
    const Interval* interval = std::get_if<Interval>(&first);
    const Range* range = std::get_if<Range>(&second);
    if (interval == nullptr && range == nullptr) {
      interval = std::get_if<Interval>(&second);
      range = std::get_if<Range>(&first);
    }
    if (interval != nullptr && range != nullptr && interval->length &&
        interval->start.is_unknown() && interval->end.is_unknown()) {
      out.status = CueExtraction::Status::kOk;
      out.composed = merge_interval_into_range(*interval, *range);
      auto s1 = tree_char_span(maximal[0], tokens);
      auto s2 = tree_char_span(maximal[1], tokens);
      out.span = {std::min(s1.first, s2.first), std::max(s1.second, s2.second)};
      resolve_into(&out, dct);
      return out;
    }
  }

  std::optional<ParseTree> tree = select_tree(chart);
  out.status = CueExtraction::Status::kOk;
  out.composed = compose(*tree);
  out.span = tree_char_span(*tree, tokens);
  resolve_into(&out, dct);
  return out;
}

DocumentExtraction extract_document(const Grammar& grammar, const Document& doc) {
  DocumentExtraction out;
  for (const EventRecord& event : doc.events) {
    if (!event.cue_span) continue;
    std::string cue_text =
        doc.text.substr(event.cue_span->first, event.cue_span->second - event.cue_span->first);
    DocumentExtraction::Item item;
    item.event_id = event.id;
    item.cue = extract_cue(grammar, cue_text, doc.dct);
    item.span = {event.cue_span->first + item.cue.span.first,
                 event.cue_span->first + item.cue.span.second};
    out.items.push_back(std::move(item));
  }
  return out;
}

namespace {

std::vector<std::pair<std::string, TimeExpression>> complete_expressions(
    const Grammar& grammar, const Document& doc) {
  std::vector<std::pair<std::string, TimeExpression>> out;
  for (const auto& item : extract_document(grammar, doc).items) {
    if (item.cue.status != CueExtraction::Status::kOk || !item.cue.resolved) continue;
    out.emplace_back(item.event_id, *item.cue.resolved);
  }
  return out;
}

}  // namespace

std::vector<StageConstraint> document_constraints(const Grammar& grammar, const Document& doc,
                                                  bool include_inverses) {
  return generate_constraints(complete_expressions(grammar, doc), include_inverses);
}

TimeExpression extent_of(const TimeExpression& expr) {
  if (const auto* rg = std::get_if<Range>(&expr))
    return Interval{rg->lower, rg->upper, std::nullopt};
  return expr;
}

std::vector<StageConstraint> document_dummy_constraints(const Grammar& grammar,
                                                        const Document& doc,
                                                        const std::string& prefix) {
  auto events = complete_expressions(grammar, doc);
  std::vector<StageConstraint> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& [id, expr] = events[i];
    std::string dummy = prefix + id;
    // Link the extent node to its event: exact expressions coincide with the
    // event, ranges contain it.
    bool exact = !std::holds_alternative<Range>(expr);
    out.push_back(StageConstraint{dummy, id,
                                  exact ? RelationLabel::kSimultaneous : RelationLabel::kIncludes});
    TimeExpression extent = extent_of(expr);
    for (std::size_t j = 0; j < events.size(); ++j) {
      if (i == j) continue;
      // Extent vs the other extent, and extent vs the other event's window.
      if (auto rel = derive_relation(extent, extent_of(events[j].second)))
        out.push_back(StageConstraint{dummy, prefix + events[j].first, *rel});
      if (auto rel = derive_relation(extent, events[j].second))
        out.push_back(StageConstraint{dummy, events[j].first, *rel});
    }
  }
  std::sort(out.begin(), out.end(), [](const StageConstraint& x, const StageConstraint& y) {
    if (x.source != y.source) return x.source < y.source;
    return x.target < y.target;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace stage
