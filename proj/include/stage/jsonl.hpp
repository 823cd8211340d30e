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

#include <functional>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stage/evalkit.hpp"
#include "stage/ilp.hpp"
#include "stage/rational.hpp"

namespace stage {

// Schema violation in a line-delimited input; carries the 1-based line.
struct ValidationError : std::runtime_error {
  ValidationError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  std::size_t line_no;
};

// Corpus document record (one JSON object per line).
Document parse_document_json(const std::string& text);
std::string document_to_json(const Document& doc);

// {doc_id, source, target, probs:{a,b,s,i,ii,v?}}
struct ProbRecord {
  std::string doc_id;
  std::string source;
  std::string target;
  std::map<RelationLabel, Rational> probs;
};
ProbRecord parse_prob_record(const std::string& text);

// {doc_id, source, target, relation}
struct ConstraintRecord {
  std::string doc_id;
  StageConstraint constraint;
};
ConstraintRecord parse_constraint_record(const std::string& text);
std::string constraint_record_to_json(const ConstraintRecord& record);

// Tlink rows accept either the constraint-record shape or {source,target,rel}.
std::pair<std::string, TlinkRecord> parse_tlink_record(const std::string& text);

// Runs `fn` over every line of `in`, writing one output line per input line
// in input order. `fn` may run on `jobs` worker threads; it gets the raw
// line and its 1-based number and returns the output line (empty = skip).
// Exceptions from workers surface on the caller thread.
void process_lines(std::istream& in, std::ostream& out, int jobs,
                   const std::function<std::string(const std::string&, std::size_t)>& fn);

}  // namespace stage
