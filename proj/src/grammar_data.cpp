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

#include "stage/grammar.hpp"

namespace stage {

// Keep this text byte-identical with data/grammar.stg; the unit test
// grammar_file_matches_builtin enforces it.
std::string_view builtin_grammar_text() {
  static constexpr std::string_view kText = R"GRM(# Temporal grammar: vocabulary and binary rules.
#
# Format:
#   lex SURFACE : CLASS        vocabulary entry (case-insensitive)
#   LHS -> RHS1 RHS2 @tag      binary rule
#   LHS -> RHS @tag            lexical promotion of a token class
#
# Number words (one..ninety-nine, a/an, ordinals), digit strings, four-digit
# year numbers and slash/dash date literals are matched by built-in
# recognizers and do not appear here.

# --- units ---
lex second : Unit
lex seconds : Unit
lex minute : Unit
lex minutes : Unit
lex hour : Unit
lex hours : Unit
lex day : Unit
lex days : Unit
lex week : Unit
lex weeks : Unit
lex month : Unit
lex months : Unit
lex quarter : Unit
lex quarters : Unit
lex year : Unit
lex years : Unit
lex decade : Unit
lex decades : Unit

# --- month names ---
lex january : MonthName
lex february : MonthName
lex march : MonthName
lex april : MonthName
lex may : MonthName
lex june : MonthName
lex july : MonthName
lex august : MonthName
lex september : MonthName
lex october : MonthName
lex november : MonthName
lex december : MonthName
lex jan : MonthName
lex feb : MonthName
lex mar : MonthName
lex apr : MonthName
lex jun : MonthName
lex jul : MonthName
lex aug : MonthName
lex sep : MonthName
lex sept : MonthName
lex oct : MonthName
lex nov : MonthName
lex dec : MonthName

# --- weekday names ---
lex monday : WeekdayName
lex tuesday : WeekdayName
lex wednesday : WeekdayName
lex thursday : WeekdayName
lex friday : WeekdayName
lex saturday : WeekdayName
lex sunday : WeekdayName
lex mon : WeekdayName
lex tue : WeekdayName
lex tues : WeekdayName
lex wed : WeekdayName
lex thu : WeekdayName
lex thurs : WeekdayName
lex fri : WeekdayName
lex sat : WeekdayName
lex sun : WeekdayName

# --- deictics ---
lex today : Deictic
lex yesterday : Deictic
lex tomorrow : Deictic
lex now : Deictic

# --- function words ---
lex in : FuncIn
lex on : FuncOn
lex at : FuncAt
lex for : FuncFor
lex from : FuncFrom
lex to : FuncTo
lex until : FuncUntil
lex till : FuncUntil
lex since : FuncSince
lex by : FuncBy
lex within : FuncWithin
lex before : FuncBefore
lex after : FuncAfter
lex following : FuncAfter
lex during : FuncDuring

# --- modifiers ---
lex next : ModNext
lex last : ModLast
lex past : ModLast
lex this : ModThis
lex the : ModThis
lex sometime : ModSometime
lex later in : ModLaterIn
lex ago : AgoMarker
lex earlier : AgoMarker

# --- core composition ---
Length -> Num Unit @num_unit_to_length
Instant -> Length AgoMarker @length_ago_to_instant
Instant -> FuncIn Length @in_length_to_instant
Interval -> FuncFor Length @for_length_to_interval
Range -> FuncWithin Length @within_length_to_range
Interval -> FuncBefore Instant @before_instant_to_interval
Interval -> FuncBy Instant @before_instant_to_interval
Interval -> FuncUntil Instant @before_instant_to_interval
Interval -> FuncTo Instant @before_instant_to_interval
Interval -> FuncAfter Instant @after_instant_to_interval
Interval -> FuncSince Instant @after_instant_to_interval
Interval -> FuncFrom Instant @after_instant_to_interval
Interval -> Interval Interval @merge_intervals

# --- calendar references ---
Range -> FuncIn MonthName @in_month_to_range
Instant -> MonthName Num @month_daynum_to_instant
Instant -> Instant YearNum @instant_year_to_instant
Range -> MonthName YearNum @month_year_to_range
Instant -> ModNext WeekdayName @next_weekday_to_instant
Instant -> ModLast WeekdayName @last_weekday_to_instant

# --- modifier composition ---
Range -> ModNext Unit @next_unit_to_range
Range -> ModLast Unit @last_unit_to_range
Range -> ModThis Unit @this_unit_to_range
Range -> ModThis Length @the_nth_unit_to_range
Range -> ModSometime Range @wrap_range
Range -> ModThis Range @wrap_range
Range -> ModLaterIn Range @later_in_range

# --- wrapping and bounding over complete types ---
Range -> FuncIn Range @wrap_range
Range -> FuncDuring Range @wrap_range
Instant -> FuncOn Instant @wrap_instant
Instant -> FuncAt Instant @wrap_instant
Instant -> ModThis Instant @wrap_instant
Interval -> FuncFor Range @for_range_to_interval
Interval -> FuncFrom Range @from_range_to_interval
Interval -> FuncTo Range @until_range_to_interval
Interval -> FuncUntil Range @until_range_to_interval
Interval -> FuncBy Range @until_range_to_interval

# --- lexical promotions ---
Range -> MonthName @month_to_range
Instant -> WeekdayName @weekday_to_instant
Instant -> DateLit @datelit_to_instant
Range -> YearNum @year_to_range
Instant -> Deictic @deictic_to_instant
)GRM";
  return kText;
}

}  // namespace stage
