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

#include "stage/temporal.hpp"

namespace stage {

// Aligns an expression onto the hours timeline. Explicit-date anchors
// resolve unconditionally; present/month/weekday anchors resolve only when a
// document date is supplied and otherwise pass through untouched (still
// mutually comparable through their shared anchor). Idempotent.
TimeExpression resolve(const TimeExpression& expr, const std::optional<DateTime>& dct);

TimePoint resolve_point(const TimePoint& point, const std::optional<DateTime>& dct);

}  // namespace stage
