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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nnim/setnim.hpp"

namespace nnim {

class Oracle;

struct TraceRow {
    std::string label;                    // loop index: "5", "x=4", "y=1"; empty for the initial row
    std::optional<Height> d;
    std::vector<std::optional<Height>> m; // m_2 .. m_{l+1}; empty cells are absent
    std::optional<Height> Delta;
    std::optional<Height> delta;
    std::optional<Position> r;
};

struct AlgorithmTrace {
    std::string algorithm;  // "two-delta", "delta-alg", "small-delta", "unit-adjust", "case1"
    int half = 0;
    bool shows_Delta = false;
    bool shows_delta = false;
    std::vector<TraceRow> rows;
};

/// Aligned text table, one line per row.
std::string render_trace(const AlgorithmTrace& trace);

struct TwoDeltaResult {
    Position r;
    Height Delta = 0;
    Height delta = 0;
    AlgorithmTrace trace;
};

struct SmallDeltaResult {
    Position r;
    int x = 0;  // flanking A-side stack, 1-based within a_1..a_l
    int y = 0;  // flanking B-side stack, 1-based within b_1..b_l
    Height delta = 0;
    AlgorithmTrace trace;
};

struct DeltaAlgResult {
    Position r;
    AlgorithmTrace trace;
};

/// The routines below take NN(2l,l) positions (even n >= 4) and throw
/// DomainError naming the violated precondition.

/// Requires A > B, s* > m, m > 0. Stops with Delta = 0 or delta = 0.
TwoDeltaResult two_delta(const Position& pos);

/// Requires A > B and m = s*. Plays on A-side stacks only.
DeltaAlgResult delta_alg(const Position& pos);

/// Requires A = B, s* > m, m > 0. Returns delta in {0, 1}.
SmallDeltaResult small_delta(const Position& pos);

/// Requires s* - m = 1; x, y are the flanks reported by small_delta.
Position unit_adjust(const Position& r, int x, int y);

struct StrategyMove {
    std::vector<Height> removals;  // per stack
    Move move;
    Position target;
    std::vector<AlgorithmTrace> traces;
    std::string route;  // e.g. "case 2.1", "case 1.2", "path", "predicate search"
    bool mirrored = false;
};

/// Table-1 endpoint and A-side moves. Requires m >= s*, A >= B and pos not in S_l.
StrategyMove case1_move(const GameSpec& spec, const Position& pos);

using PositionPredicate = std::function<bool(const Position&)>;

struct SearchLimits {
    std::uint64_t candidates_per_set = 1'000'000;
};

/// First option (move sets in order) satisfying pred. When `weights` is given
/// every accepted option also satisfies weights . option = 0, which lets one
/// removal per move set be solved instead of enumerated. Throws BudgetExceeded
/// when a move set was cut off and nothing was found.
std::optional<Position> predicate_guided_search(const GameSpec& spec, const Position& pos,
                                                const PositionPredicate& pred,
                                                const std::optional<std::vector<Height>>& weights = std::nullopt,
                                                SearchLimits limits = {});

/// Option of PathNim PN(n,k), k >= ceil(n/2), satisfying the zero-run form.
std::optional<Position> path_winning_target(const GameSpec& spec, const Position& pos);

/// A move to a P-position, or absent for P-positions. Uses `oracle` (or a
/// private one) only for games without a closed form.
std::optional<StrategyMove> winning_move(const GameSpec& spec, const Position& pos, Oracle* oracle = nullptr,
                                         SearchLimits limits = {});

/// One token from the tallest stack (lowest index on ties). Requires a non-terminal position.
Move stalling_move(const GameSpec& spec, const Position& pos);

}  // namespace nnim
