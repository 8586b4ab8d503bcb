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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nnim {

/// Token count on one stack.
using Height = std::int64_t;

inline constexpr Height kDefaultHeightCap = 4294967295;  // 2^32 - 1

/// Invalid family parameters or a malformed game description.
class ParameterError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was asked about a game or position outside its domain.
class DomainError : public std::domain_error {
 public:
    using std::domain_error::domain_error;
};

/// A move violates the rules for the position it is applied to.
class LegalityError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// A search exceeded its memo or option budget. Never a wrong answer.
class BudgetExceeded : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

enum class FamilyKind { Generic, Nim, Moore, Circular, Path, Necklace, Clasp };

/// Family tag with its parameters. Unused parameters stay zero.
struct Family {
    FamilyKind kind = FamilyKind::Generic;
    int n = 0;
    int k = 0;
    int c = 0;

    static Family generic(int n) { return {FamilyKind::Generic, n, 0, 0}; }
    static Family nim(int n) { return {FamilyKind::Nim, n, 0, 0}; }
    static Family moore(int n, int k) { return {FamilyKind::Moore, n, k, 0}; }
    static Family circular(int n, int k) { return {FamilyKind::Circular, n, k, 0}; }
    static Family path(int n, int k) { return {FamilyKind::Path, n, k, 0}; }
    static Family necklace(int n, int k) { return {FamilyKind::Necklace, n, k, 0}; }
    static Family clasp(int n, int k, int c) { return {FamilyKind::Clasp, n, k, c}; }

    /// Short code used in JSON and on the command line ("NN", "PN", ...).
    std::string code() const;
    /// Human readable form, e.g. "NN(10,5)".
    std::string to_string() const;

    bool operator==(const Family&) const = default;
};

/// Parses a family code ("NN", "pn", "SET", ...). Throws ParameterError.
FamilyKind family_kind_from_code(const std::string& code);

/// Vertex set of one move, 0-based and sorted.
using MoveSet = std::vector<int>;

/// Vertex count plus the maximal allowed move sets.
///
/// Vertices are 0-based inside the library; every external format (JSON,
/// CLI, HTTP) uses 1-based indices.
class GameSpec {
 public:
    GameSpec() = default;

    /// Validates that indices are in range, sets are non-empty, the union
    /// covers every vertex and no set is contained in another.
    GameSpec(int n, std::vector<MoveSet> move_sets, Family family,
             Height height_cap = kDefaultHeightCap);

    int size() const { return n_; }
    const std::vector<MoveSet>& move_sets() const { return sets_; }
    const MoveSet& move_set(std::size_t i) const { return sets_.at(i); }
    std::size_t set_count() const { return sets_.size(); }
    const Family& family() const { return family_; }
    Height height_cap() const { return cap_; }

    bool in_set(std::size_t set, int vertex) const {
        return member_[set * static_cast<std::size_t>(n_) + static_cast<std::size_t>(vertex)] != 0;
    }

    /// True when reversing the vertex order maps the collection onto itself.
    bool reversal_symmetric() const;

    /// Index of the set that is the reversal of `set`. Requires symmetry.
    std::size_t reversed_set(std::size_t set) const;

    /// Canonical text identifying the move-set collection (ignores the tag).
    std::string identity() const;

    /// Same collection of move sets, order ignored.
    bool same_move_sets(const GameSpec& other) const;

    GameSpec with_height_cap(Height cap) const;

 private:
    int n_ = 0;
    std::vector<MoveSet> sets_;
    Family family_;
    Height cap_ = kDefaultHeightCap;
    std::vector<char> member_;
};

/// Drops duplicates and sets contained in another set, keeping first-seen order.
std::vector<MoveSet> prune_to_maximal(std::vector<MoveSet> sets);

/// Builds the maximal move-set collection for a family. Throws ParameterError.
GameSpec build_spec(const Family& family);

/// Builds a generic spec from 1-based move sets.
GameSpec generic_spec(int n, const std::vector<std::vector<int>>& one_based_sets);

/// Non-negative stack heights, one per vertex.
class Position {
 public:
    Position() = default;
    explicit Position(std::vector<Height> heights);
    Position(std::initializer_list<Height> heights);

    std::size_t size() const { return h_.size(); }
    Height operator[](std::size_t i) const { return h_[i]; }
    const std::vector<Height>& heights() const { return h_; }
    std::span<const Height> span() const { return h_; }
    Height total() const;

    std::string to_string() const;

    auto operator<=>(const Position&) const = default;

 private:
    std::vector<Height> h_;
};

/// Throws LegalityError unless `pos` has the spec's length and respects its cap.
void check_position(const GameSpec& spec, const Position& pos);

/// A chosen move set plus a full-length removal vector.
struct Move {
    std::size_t set_index = 0;
    std::vector<Height> removals;

    Height total() const;
    bool operator==(const Move&) const = default;
};

enum class Outcome : std::uint8_t { P = 0, N = 1 };

inline const char* to_string(Outcome o) { return o == Outcome::P ? "P" : "N"; }

/// Throws LegalityError naming the violated rule.
void check_move(const GameSpec& spec, const Position& pos, const Move& move);

bool is_legal(const GameSpec& spec, const Position& pos, const Move& move);

Position apply_move(const GameSpec& spec, const Position& pos, const Move& move);

inline bool is_terminal(const Position& pos) {
    for (Height h : pos.heights())
        if (h != 0) return false;
    return true;
}

Position mirror(const Position& pos);

/// The reversed move of a reversal-symmetric spec.
Move mirror(const GameSpec& spec, const Move& move);

/// Smallest-index move set containing every listed vertex.
std::optional<std::size_t> first_set_containing(const GameSpec& spec, std::span<const int> vertices);

/// Turns a per-stack removal vector into a Move on the first set that covers
/// its support. Empty when the support fits no single set or nothing is removed.
std::optional<Move> assemble_move(const GameSpec& spec, const Position& from, const Position& to);

/// Walks every non-zero removal vector on one move set, bounded by the
/// current heights, in lexicographic order of the set's coordinates.
class RemovalOdometer {
 public:
    RemovalOdometer(std::span<const int> coords, std::span<const Height> heights);

    /// Advances to the next non-zero vector; false when exhausted.
    bool next();

    std::span<const Height> values() const { return values_; }
    std::span<const int> coords() const { return coords_; }
    /// Index of the lowest coordinate that changed in the last step.
    std::size_t last_changed() const { return changed_; }

 private:
    std::span<const int> coords_;
    std::vector<Height> bounds_;
    std::vector<Height> values_;
    std::size_t changed_ = 0;
    bool done_ = false;
};

/// Lazy sequence of every legal move from a position.
class MoveRange {
 public:
    MoveRange(const GameSpec& spec, Position pos);

    class iterator {
     public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Move;
        using difference_type = std::ptrdiff_t;
        using pointer = const Move*;
        using reference = const Move&;

        iterator() = default;
        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        bool operator==(std::default_sentinel_t) const { return range_ == nullptr; }

     private:
        friend class MoveRange;
        explicit iterator(MoveRange* r);
        void advance();

        MoveRange* range_ = nullptr;
        std::size_t set_ = 0;
        std::optional<RemovalOdometer> odo_;
        Move current_;
    };

    iterator begin() { return iterator(this); }
    std::default_sentinel_t end() const { return {}; }

 private:
    const GameSpec* spec_;
    Position pos_;
};

MoveRange legal_moves(const GameSpec& spec, const Position& pos);

}  // namespace nnim
