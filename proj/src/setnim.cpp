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

#include "nnim/setnim.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace nnim {

namespace {

bool is_subset(const MoveSet& a, const MoveSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

MoveSet window(int start, int len)
{
    MoveSet s(static_cast<std::size_t>(len));
    std::iota(s.begin(), s.end(), start);
    return s;
}

MoveSet normalized(MoveSet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

[[noreturn]] void bad(const std::string& family, const std::string& what)
{
    throw ParameterError(family + ": " + what);
}

}  // namespace

std::string Family::code() const
{
    switch (kind) {
    case FamilyKind::Generic: return "SET";
    case FamilyKind::Nim: return "NIM";
    case FamilyKind::Moore: return "MOORE";
    case FamilyKind::Circular: return "CN";
    case FamilyKind::Path: return "PN";
    case FamilyKind::Necklace: return "NN";
    case FamilyKind::Clasp: return "NNG";
    }
    return "SET";
}

std::string Family::to_string() const
{
    std::ostringstream os;
    os << code() << "(" << n;
    switch (kind) {
    case FamilyKind::Generic:
    case FamilyKind::Nim: break;
    case FamilyKind::Clasp: os << "," << k << "," << c; break;
    default: os << "," << k; break;
    }
    os << ")";
    return os.str();
}

FamilyKind family_kind_from_code(const std::string& code)
{
    std::string u;
    for (char ch : code) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    if (u == "SET" || u == "GENERIC") return FamilyKind::Generic;
    if (u == "NIM") return FamilyKind::Nim;
    if (u == "MOORE") return FamilyKind::Moore;
    if (u == "CN" || u == "CIRCULAR") return FamilyKind::Circular;
    if (u == "PN" || u == "PATH") return FamilyKind::Path;
    if (u == "NN" || u == "NECKLACE") return FamilyKind::Necklace;
    if (u == "NNG" || u == "CLASP") return FamilyKind::Clasp;
    throw ParameterError("unknown family code '" + code + "'");
}

GameSpec::GameSpec(int n, std::vector<MoveSet> move_sets, Family family, Height height_cap)
    : n_(n), sets_(std::move(move_sets)), family_(family), cap_(height_cap)
{
    if (n_ < 0) throw ParameterError("vertex count must be non-negative");
    if (cap_ < 0) throw ParameterError("height cap must be non-negative");
    std::vector<char> covered(static_cast<std::size_t>(n_), 0);
    for (auto& s : sets_) {
        if (s.empty()) throw ParameterError("move sets must be non-empty");
        s = normalized(std::move(s));
        for (int v : s) {
            if (v < 0 || v >= n_)
                throw ParameterError("move set index " + std::to_string(v + 1) + " outside 1.." + std::to_string(n_));
            covered[static_cast<std::size_t>(v)] = 1;
        }
    }
    for (int v = 0; v < n_; ++v)
        if (!covered[static_cast<std::size_t>(v)])
            throw ParameterError("vertex " + std::to_string(v + 1) + " is in no move set");
    for (std::size_t i = 0; i < sets_.size(); ++i)
        for (std::size_t j = 0; j < sets_.size(); ++j)
            if (i != j && is_subset(sets_[i], sets_[j]))
                throw ParameterError("move set " + std::to_string(i + 1) + " is contained in move set " +
                                     std::to_string(j + 1) + " (only maximal sets are allowed)");

    member_.assign(sets_.size() * static_cast<std::size_t>(n_), 0);
    for (std::size_t i = 0; i < sets_.size(); ++i)
        for (int v : sets_[i]) member_[i * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v)] = 1;
}

bool GameSpec::reversal_symmetric() const
{
    std::set<MoveSet> all(sets_.begin(), sets_.end());
    for (const auto& s : sets_) {
        MoveSet r;
        for (int v : s) r.push_back(n_ - 1 - v);
        std::sort(r.begin(), r.end());
        if (!all.contains(r)) return false;
    }
    return true;
}

std::size_t GameSpec::reversed_set(std::size_t set) const
{
    MoveSet r;
    for (int v : sets_.at(set)) r.push_back(n_ - 1 - v);
    std::sort(r.begin(), r.end());
    auto it = std::find(sets_.begin(), sets_.end(), r);
    if (it == sets_.end()) throw DomainError("spec is not reversal-symmetric");
    return static_cast<std::size_t>(it - sets_.begin());
}

std::string GameSpec::identity() const
{
    std::vector<MoveSet> sorted = sets_;
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream os;
    os << n_ << ":";
    for (const auto& s : sorted) {
        os << "{";
        for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
        os << "}";
    }
    return os.str();
}

bool GameSpec::same_move_sets(const GameSpec& other) const
{
    return n_ == other.n_ && identity() == other.identity();
}

GameSpec GameSpec::with_height_cap(Height cap) const
{
    return GameSpec(n_, sets_, family_, cap);
}

std::vector<MoveSet> prune_to_maximal(std::vector<MoveSet> sets)
{
    for (auto& s : sets) s = normalized(std::move(s));
    std::vector<MoveSet> out;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].empty()) continue;
        bool dominated = false;
        for (std::size_t j = 0; j < sets.size() && !dominated; ++j) {
            if (i == j) continue;
            if (sets[i] == sets[j]) dominated = j < i;  // keep the first copy
            else dominated = is_subset(sets[i], sets[j]);
        }
        if (!dominated) out.push_back(sets[i]);
    }
    return out;
}

GameSpec build_spec(const Family& f)
{
    const std::string name = f.code();
    const int n = f.n;
    const int k = f.k;
    std::vector<MoveSet> sets;

    switch (f.kind) {
    case FamilyKind::Generic:
        bad(name, "generic specs need explicit move sets");
    case FamilyKind::Nim:
        if (n < 1) bad(name, "n must be >= 1");
        for (int i = 0; i < n; ++i) sets.push_back({i});
        break;
    case FamilyKind::Moore: {
        if (n < 1) bad(name, "n must be >= 1");
        if (k < 1 || k > n) bad(name, "k must satisfy 1 <= k <= n");
        if (n > 20) bad(name, "n must be <= 20");
        std::vector<char> pick(static_cast<std::size_t>(n), 0);
        std::fill(pick.begin(), pick.begin() + k, 1);
        do {
            MoveSet s;
            for (int i = 0; i < n; ++i)
                if (pick[static_cast<std::size_t>(i)]) s.push_back(i);
            sets.push_back(s);
        } while (std::prev_permutation(pick.begin(), pick.end()));
        break;
    }
    case FamilyKind::Circular:
        if (n < 1) bad(name, "n must be >= 1");
        if (k < 1 || k > n) bad(name, "k must satisfy 1 <= k <= n");
        for (int i = 0; i < n; ++i) {
            MoveSet s;
            for (int j = 0; j < k; ++j) s.push_back((i + j) % n);
            sets.push_back(s);
        }
        break;
    case FamilyKind::Path:
        if (n < 1) bad(name, "n must be >= 1");
        if (k < 1 || k > n) bad(name, "k must satisfy 1 <= k <= n");
        for (int i = 0; i + k <= n; ++i) sets.push_back(window(i, k));
        break;
    case FamilyKind::Necklace:
        if (n < 2) bad(name, "n must be >= 2");
        if (k < 2 || k > n) bad(name, "k must satisfy 2 <= k <= n");
        for (int i = 0; i + k <= n; ++i) sets.push_back(window(i, k));
        sets.push_back({0, n - 1});
        break;
    case FamilyKind::Clasp: {
        if (n < 2) bad(name, "n must be >= 2");
        if (k < 2 || k > n) bad(name, "k must satisfy 2 <= k <= n");
        if (f.c < 2 || f.c > n / 2 + 1) bad(name, "c must satisfy 2 <= c <= floor(n/2)+1");
        for (int i = 0; i + k <= n; ++i) sets.push_back(window(i, k));
        // wrap-around path (n-c+2) .. n, 1 .. (c-1), carrying PN(2(c-1), c)
        std::vector<int> wrap;
        for (int v = n - f.c + 1; v < n; ++v) wrap.push_back(v);
        for (int v = 0; v < f.c - 1; ++v) wrap.push_back(v);
        const int len = static_cast<int>(wrap.size());
        const int width = std::min(f.c, len);
        for (int i = 0; i + width <= len; ++i)
            sets.emplace_back(wrap.begin() + i, wrap.begin() + i + width);
        break;
    }
    }
    return GameSpec(n, prune_to_maximal(std::move(sets)), f);
}

GameSpec generic_spec(int n, const std::vector<std::vector<int>>& one_based_sets)
{
    std::vector<MoveSet> sets;
    for (const auto& s : one_based_sets) {
        MoveSet z;
        for (int v : s) {
            if (v < 1 || v > n)
                throw ParameterError("move set index " + std::to_string(v) + " outside 1.." + std::to_string(n));
            z.push_back(v - 1);
        }
        sets.push_back(std::move(z));
    }
    return GameSpec(n, std::move(sets), Family::generic(n));
}

Position::Position(std::vector<Height> heights) : h_(std::move(heights))
{
    for (std::size_t i = 0; i < h_.size(); ++i)
        if (h_[i] < 0) throw LegalityError("stack " + std::to_string(i + 1) + " has negative height");
}

Position::Position(std::initializer_list<Height> heights) : Position(std::vector<Height>(heights)) {}

Height Position::total() const
{
    return std::accumulate(h_.begin(), h_.end(), Height{0});
}

std::string Position::to_string() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < h_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(h_[i]);
    }
    return s + ")";
}

void check_position(const GameSpec& spec, const Position& pos)
{
    if (pos.size() != static_cast<std::size_t>(spec.size()))
        throw LegalityError("position has " + std::to_string(pos.size()) + " stacks, game has " +
                            std::to_string(spec.size()));
    for (std::size_t i = 0; i < pos.size(); ++i)
        if (pos[i] > spec.height_cap())
            throw LegalityError("stack " + std::to_string(i + 1) + " exceeds the height cap " +
                                std::to_string(spec.height_cap()));
}

Height Move::total() const
{
    return std::accumulate(removals.begin(), removals.end(), Height{0});
}

void check_move(const GameSpec& spec, const Position& pos, const Move& move)
{
    check_position(spec, pos);
    if (move.set_index >= spec.set_count())
        throw LegalityError("move set " + std::to_string(move.set_index + 1) + " does not exist (game has " +
                            std::to_string(spec.set_count()) + ")");
    if (move.removals.size() != pos.size())
        throw LegalityError("removal vector has " + std::to_string(move.removals.size()) + " entries, expected " +
                            std::to_string(pos.size()));
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const Height r = move.removals[i];
        if (r < 0) throw LegalityError("removal at stack " + std::to_string(i + 1) + " is negative");
        if (r > 0 && !spec.in_set(move.set_index, static_cast<int>(i)))
            throw LegalityError("stack " + std::to_string(i + 1) + " is outside move set " +
                                std::to_string(move.set_index + 1));
        if (r > pos[i])
            throw LegalityError("removal of " + std::to_string(r) + " exceeds height " + std::to_string(pos[i]) +
                                " at stack " + std::to_string(i + 1));
    }
    if (move.total() < 1) throw LegalityError("a move must remove at least one token");
}

bool is_legal(const GameSpec& spec, const Position& pos, const Move& move)
{
    try {
        check_move(spec, pos, move);
        return true;
    } catch (const LegalityError&) {
        return false;
    }
}

Position apply_move(const GameSpec& spec, const Position& pos, const Move& move)
{
    check_move(spec, pos, move);
    std::vector<Height> h = pos.heights();
    for (std::size_t i = 0; i < h.size(); ++i) h[i] -= move.removals[i];
    return Position(std::move(h));
}

Position mirror(const Position& pos)
{
    std::vector<Height> h(pos.heights().rbegin(), pos.heights().rend());
    return Position(std::move(h));
}

Move mirror(const GameSpec& spec, const Move& move)
{
    Move m;
    m.set_index = spec.reversed_set(move.set_index);
    m.removals.assign(move.removals.rbegin(), move.removals.rend());
    return m;
}

std::optional<std::size_t> first_set_containing(const GameSpec& spec, std::span<const int> vertices)
{
    for (std::size_t s = 0; s < spec.set_count(); ++s) {
        bool all = true;
        for (int v : vertices)
            if (!spec.in_set(s, v)) {
                all = false;
                break;
            }
        if (all) return s;
    }
    return std::nullopt;
}

std::optional<Move> assemble_move(const GameSpec& spec, const Position& from, const Position& to)
{
    if (from.size() != to.size()) return std::nullopt;
    std::vector<int> changed;
    Move m;
    m.removals.assign(from.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (to[i] > from[i]) return std::nullopt;
        if (to[i] < from[i]) {
            changed.push_back(static_cast<int>(i));
            m.removals[i] = from[i] - to[i];
        }
    }
    if (changed.empty()) return std::nullopt;
    auto set = first_set_containing(spec, changed);
    if (!set) return std::nullopt;
    m.set_index = *set;
    return m;
}

RemovalOdometer::RemovalOdometer(std::span<const int> coords, std::span<const Height> heights)
    : coords_(coords), bounds_(coords.size()), values_(coords.size(), 0)
{
    for (std::size_t i = 0; i < coords.size(); ++i) bounds_[i] = heights[static_cast<std::size_t>(coords[i])];
}

bool RemovalOdometer::next()
{
    if (done_) return false;
    // last coordinate varies fastest
    for (std::size_t i = values_.size(); i-- > 0;) {
        if (values_[i] < bounds_[i]) {
            ++values_[i];
            changed_ = i;
            return true;
        }
        values_[i] = 0;
    }
    done_ = true;
    return false;
}

MoveRange::MoveRange(const GameSpec& spec, Position pos) : spec_(&spec), pos_(std::move(pos))
{
    check_position(spec, pos_);
}

MoveRange::iterator::iterator(MoveRange* r) : range_(r)
{
    current_.removals.assign(r->pos_.size(), 0);
    if (r->spec_->set_count() == 0) {
        range_ = nullptr;
        return;
    }
    odo_.emplace(r->spec_->move_set(0), r->pos_.span());
    advance();
}

MoveRange::iterator& MoveRange::iterator::operator++()
{
    advance();
    return *this;
}

void MoveRange::iterator::advance()
{
    const GameSpec& spec = *range_->spec_;
    while (true) {
        if (odo_->next()) {
            current_.set_index = set_;
            std::fill(current_.removals.begin(), current_.removals.end(), 0);
            auto vals = odo_->values();
            auto coords = odo_->coords();
            for (std::size_t i = 0; i < coords.size(); ++i)
                current_.removals[static_cast<std::size_t>(coords[i])] = vals[i];
            return;
        }
        if (++set_ >= spec.set_count()) {
            range_ = nullptr;
            return;
        }
        odo_.emplace(spec.move_set(set_), range_->pos_.span());
    }
}

MoveRange legal_moves(const GameSpec& spec, const Position& pos)
{
    return MoveRange(spec, pos);
}

}  // namespace nnim
