/*
 * Copyright 2026 The nnim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nnim/characterizations.hpp"
#include "nnim/reductions.hpp"
#include "nnim/setnim.hpp"
#include "nnim/strategy.hpp"

namespace nnim {

using json = nlohmann::ordered_json;

/// Family from its code and parameters; c is only read for clasp games.
Family make_family(const std::string& code, int n, int k, int c = 0);

/// {"family":"NN","n":10,"k":5} or {"family":"SET","n":4,"move_sets":[[1,2],...]}.
json spec_to_json(const GameSpec& spec);
/// Reads the descriptor fields of `j`; an optional "cap" sets the height cap.
GameSpec spec_from_json(const json& j);

/// Spec descriptor with "heights" added. position_from_json also takes a bare
/// array or an object with "pos".
json game_to_json(const GameSpec& spec, const Position& pos);
Position position_from_json(const json& j);

json heights_to_json(const Position& pos);

/// {"set":3,"removals":[...]} with a 1-based set number.
json move_to_json(const Move& move);
Move move_from_json(const json& j);

json report_to_json(const PredicateReport& report);
json derived_to_json(const DerivedQuantities& q);
json trace_to_json(const AlgorithmTrace& trace);
json strategy_to_json(const StrategyMove& move);
json step_to_json(const ReductionStep& step);
json pipeline_to_json(const GameSpec& original, const Position& pos, const ReductionPipeline& pipeline);

}  // namespace nnim
