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

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "nnim/setnim.hpp"

namespace nnim {

struct OracleBudget {
    std::uint64_t memo_entries = 10'000'000;
    std::uint64_t options = 1'000'000'000;

    /// Defaults, overridden by NN_BUDGET="<entries>[,<options>]" when set.
    static OracleBudget from_env();
    /// Parses "<entries>[,<options>]". Throws ParameterError.
    static OracleBudget parse(const std::string& text);
};

struct OracleStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t options = 0;
    std::uint64_t memo_entries = 0;
};

/// Outcomes of every position in a box 0 <= p <= caps, filled retrograde.
class OutcomeTable {
 public:
    OutcomeTable(std::vector<Height> caps, std::vector<std::uint8_t> outcomes);

    const std::vector<Height>& caps() const { return caps_; }
    std::size_t size() const { return outcomes_.size(); }
    bool covers(const Position& pos) const;
    Outcome at(const Position& pos) const;
    Outcome at_index(std::size_t i) const { return static_cast<Outcome>(outcomes_[i]); }
    std::size_t index(const Position& pos) const;
    Position position(std::size_t index) const;

    /// Visits positions in index (lexicographic) order.
    void for_each(const std::function<void(const Position&, Outcome)>& fn) const;

 private:
    std::vector<Height> caps_;
    std::vector<std::size_t> strides_;
    std::vector<std::uint8_t> outcomes_;
};

/// Ground-truth classification by exhaustive search.
///
/// One Oracle may be shared by many threads: the memo behaves as a single
/// logical map and concurrent writes of the same key are idempotent.
class Oracle {
 public:
    explicit Oracle(OracleBudget budget = OracleBudget::from_env(), bool mirror_canonical = false);
    ~Oracle();

    Oracle(const Oracle&) = delete;
    Oracle& operator=(const Oracle&) = delete;

    Outcome classify(const GameSpec& spec, const Position& pos);

    /// Every legal move whose result is a P-position.
    std::vector<Move> winning_options(const GameSpec& spec, const Position& pos);

    /// Solves the whole box 0..caps and keeps the table for later lookups.
    std::shared_ptr<const OutcomeTable> solve_box(const GameSpec& spec, const std::vector<Height>& caps,
                                                  unsigned workers = 1);

    /// All P-positions with every height <= cap, in lexicographic order.
    std::vector<Position> enumerate_p_positions(const GameSpec& spec, Height cap, unsigned workers = 1);

    OracleStats stats() const;
    const OracleBudget& budget() const { return budget_; }
    bool mirror_canonical() const { return mirror_canonical_; }

    /// Drops memo entries and tables.
    void clear();

 private:
    struct SpecEntry;

    SpecEntry& entry(const GameSpec& spec);
    Outcome search(const GameSpec& spec, SpecEntry& e, const Position& root);
    void count_options(std::uint64_t n);

    OracleBudget budget_;
    bool mirror_canonical_;
    mutable std::mutex entries_mutex_;
    std::map<std::string, std::unique_ptr<SpecEntry>> entries_;
    std::atomic<std::uint64_t> hits_{0};
    std::atomic<std::uint64_t> misses_{0};
    std::atomic<std::uint64_t> options_{0};
};

/// Deduplicated successor positions: a removal vector on set i is skipped
/// when its support also fits an earlier set, so each distinct option is
/// produced by exactly one (set, removal) pair.
class OptionCursor {
 public:
    OptionCursor(const GameSpec& spec, const Position& pos);

    /// Next distinct option, or false when exhausted.
    bool next(std::vector<Height>& child);

    std::uint64_t generated() const { return generated_; }

 private:
    bool advance_set();
    bool duplicate() const;

    const GameSpec* spec_;
    std::vector<Height> pos_;
    std::size_t set_ = 0;
    std::optional<RemovalOdometer> odo_;
    // for the current set: per earlier overlapping set, local indices outside it
    std::vector<std::vector<std::size_t>> outside_;
    std::uint64_t generated_ = 0;
};

}  // namespace nnim
