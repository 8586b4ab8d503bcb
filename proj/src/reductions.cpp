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

#include "nnim/reductions.hpp"

#include <algorithm>
#include <map>

#include "nnim/characterizations.hpp"

namespace nnim {

const char* to_string(ReductionKind kind)
{
    switch (kind) {
    case ReductionKind::Zero: return "zero";
    case ReductionKind::Merge: return "merge";
    case ReductionKind::Subsume: return "subsume";
    case ReductionKind::Anchor: return "anchor";
    case ReductionKind::Invariance: return "invariance";
    }
    return "?";
}

InvariantVector InvariantVector::from_indices(int n, std::vector<int> ones, std::string label)
{
    InvariantVector z;
    z.bits.assign(static_cast<std::size_t>(n), 0);
    std::sort(ones.begin(), ones.end());
    ones.erase(std::unique(ones.begin(), ones.end()), ones.end());
    for (int i : ones) z.bits.at(static_cast<std::size_t>(i)) = 1;
    z.one_indices = std::move(ones);
    z.label = std::move(label);
    return z;
}

Reduced zero_reduce(const GameSpec& spec, const Position& pos, const std::optional<std::vector<int>>& requested)
{
    check_position(spec, pos);
    const int n = spec.size();
    std::vector<char> drop(static_cast<std::size_t>(n), 0);
    if (requested) {
        for (int v : *requested) {
            if (v < 0 || v >= n) throw ParameterError("zero reduction index " + std::to_string(v + 1) + " out of range");
            if (pos[static_cast<std::size_t>(v)] == 0) drop[static_cast<std::size_t>(v)] = 1;
        }
    } else {
        for (int v = 0; v < n; ++v) drop[static_cast<std::size_t>(v)] = pos[static_cast<std::size_t>(v)] == 0;
    }

    ReductionStep step;
    step.kind = ReductionKind::Zero;
    step.index_map.assign(static_cast<std::size_t>(n), -1);
    std::vector<Height> heights;
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (drop[static_cast<std::size_t>(v)]) {
            step.indices.push_back(v);
        } else {
            step.index_map[static_cast<std::size_t>(v)] = next++;
            heights.push_back(pos[static_cast<std::size_t>(v)]);
        }
    }

    std::vector<MoveSet> sets;
    for (const auto& s : spec.move_sets()) {
        MoveSet t;
        for (int v : s)
            if (int w = step.index_map[static_cast<std::size_t>(v)]; w >= 0) t.push_back(w);
        if (!t.empty()) sets.push_back(std::move(t));
    }
    sets = prune_to_maximal(std::move(sets));
    step.sets_before = spec.set_count();
    step.sets_after = sets.size();
    Family fam = step.indices.empty() ? spec.family() : Family::generic(next);
    return {GameSpec(next, std::move(sets), fam, spec.height_cap()), Position(std::move(heights)), std::move(step)};
}

Position MergeMapper::operator()(const Position& pos) const
{
    if (pos.size() != map_.size())
        throw DomainError("position has " + std::to_string(pos.size()) + " stacks, mapper expects " +
                          std::to_string(map_.size()));
    std::vector<Height> out(static_cast<std::size_t>(size_), 0);
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] >= 0) out[static_cast<std::size_t>(map_[i])] += pos[i];
    return Position(std::move(out));
}

bool mergeable(const GameSpec& spec, const std::vector<int>& C)
{
    for (std::size_t s = 0; s < spec.set_count(); ++s) {
        std::size_t inside = 0;
        for (int v : C) inside += spec.in_set(s, v) ? 1 : 0;
        if (inside != 0 && inside != C.size()) return false;
    }
    return true;
}

MergeResult merge_reduce(const GameSpec& spec, std::vector<int> C)
{
    const int n = spec.size();
    std::sort(C.begin(), C.end());
    C.erase(std::unique(C.begin(), C.end()), C.end());
    if (C.empty()) throw ParameterError("merge set is empty");
    for (int v : C)
        if (v < 0 || v >= n) throw ParameterError("merge index " + std::to_string(v + 1) + " out of range");
    if (!mergeable(spec, C)) throw DomainError("merge set splits a move set");

    ReductionStep step;
    step.kind = ReductionKind::Merge;
    step.indices = C;
    step.index_map.assign(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (v != C.front() && std::binary_search(C.begin(), C.end(), v))
            step.index_map[static_cast<std::size_t>(v)] = step.index_map[static_cast<std::size_t>(C.front())];
        else
            step.index_map[static_cast<std::size_t>(v)] = next++;
    }

    std::vector<MoveSet> sets;
    for (const auto& s : spec.move_sets()) {
        MoveSet t;
        for (int v : s) t.push_back(step.index_map[static_cast<std::size_t>(v)]);
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        sets.push_back(std::move(t));
    }
    sets = prune_to_maximal(std::move(sets));
    step.sets_before = spec.set_count();
    step.sets_after = sets.size();
    Family fam = C.size() == 1 ? spec.family() : Family::generic(next);
    MergeMapper mapper(step.index_map, next);
    return {GameSpec(next, std::move(sets), fam, spec.height_cap()), std::move(mapper), std::move(step)};
}

GameSpec subsume(const GameSpec& spec)
{
    auto sets = prune_to_maximal(spec.move_sets());
    if (sets.size() == spec.set_count()) return spec;
    return GameSpec(spec.size(), std::move(sets), spec.family(), spec.height_cap());
}

Position anchor_reduce(int n, int l, const Position& pos)
{
    if (n < 4 || l < 1 || l >= n / 2)
        throw DomainError("anchor reduction needs n >= 4 and 1 <= l < floor(n/2)");
    if (static_cast<int>(pos.size()) != n)
        throw DomainError("position has " + std::to_string(pos.size()) + " stacks, expected " + std::to_string(n));
    std::vector<Height> out;
    out.reserve(static_cast<std::size_t>(2 * l + 1));
    for (int i = 0; i < l; ++i) out.push_back(pos[static_cast<std::size_t>(i)]);
    Height center = 0;
    for (int i = l; i < n - l; ++i) center += pos[static_cast<std::size_t>(i)];
    out.push_back(center);
    for (int i = n - l; i < n; ++i) out.push_back(pos[static_cast<std::size_t>(i)]);
    return Position(std::move(out));
}

Reduced anchor_reduction(const GameSpec& spec, const Position& pos)
{
    auto nk = necklace_params(spec);
    if (!nk) throw DomainError("anchor reduction requires a NecklaceNim game, got " + spec.family().to_string());
    auto [n, k] = *nk;
    const int l = n - k;
    if (n < 4 || l < 1 || l >= n / 2)
        throw DomainError(spec.family().to_string() + " is outside the anchor reduction range");
    check_position(spec, pos);
    std::vector<int> C;
    for (int i = l; i < n - l; ++i) C.push_back(i);
    MergeResult merged = merge_reduce(spec, C);
    Family anchor = Family::necklace(2 * l + 1, l + 1);
    GameSpec expected = build_spec(anchor).with_height_cap(spec.height_cap());
    if (!merged.spec.same_move_sets(expected))
        throw DomainError("merged game does not match " + anchor.to_string());
    merged.step.kind = ReductionKind::Anchor;
    Position reduced = merged.mapper(pos);
    return {std::move(expected), std::move(reduced), std::move(merged.step)};
}

std::vector<InvariantVector> invariant_vectors(const GameSpec& spec)
{
    auto nk = necklace_params(spec);
    if (!nk) throw DomainError("invariant vectors require a NecklaceNim game, got " + spec.family().to_string());
    auto [n, k] = *nk;
    if (n < 3 || k != (n + 1) / 2)
        throw DomainError("invariant vectors need NN(2l,l) or NN(2l+1,l+1), got " + spec.family().to_string());
    const int l = n / 2;
    const bool odd = n % 2 == 1;
    std::vector<InvariantVector> out;
    for (int i = 2; i <= l; ++i) {
        // 1-based: a_1, a_i, b_{i-1}, b_l
        const int b_prev = odd ? l + i : l + i - 1;
        out.push_back(InvariantVector::from_indices(n, {0, i - 1, b_prev - 1, n - 1}, "z_" + std::to_string(i)));
    }
    if (odd) out.push_back(InvariantVector::from_indices(n, {0, l, n - 1}, "z_" + std::to_string(l + 1)));
    return out;
}

Height indicator_min(const InvariantVector& z, const Position& pos)
{
    if (z.bits.size() != pos.size())
        throw DomainError("invariant vector and position differ in length");
    if (z.one_indices.empty()) return 0;
    Height best = pos[static_cast<std::size_t>(z.one_indices.front())];
    for (int i : z.one_indices) best = std::min(best, pos[static_cast<std::size_t>(i)]);
    return best;
}

Height sigma_min(const Position& pos)
{
    const std::size_t n = pos.size();
    const std::size_t l = n / 2;
    Height total = 0;
    for (std::size_t i = 2; i <= l; ++i) total += std::min(pos[i - 1], pos[n - l + i - 2]);
    return total;
}

Reduced invariance_reduce(const GameSpec& spec, const Position& pos)
{
    auto vectors = invariant_vectors(spec);
    check_position(spec, pos);
    std::vector<Height> h = pos.heights();
    ReductionStep step;
    step.kind = ReductionKind::Invariance;
    step.index_map.resize(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) step.index_map[i] = static_cast<int>(i);
    for (const auto& z : vectors) {
        Height c = indicator_min(z, Position(h));
        for (int i : z.one_indices) h[static_cast<std::size_t>(i)] -= c;
        step.coefficients.push_back(c);
    }
    step.vectors = std::move(vectors);
    step.sigma_min = sigma_min(pos);
    step.sets_before = step.sets_after = spec.set_count();
    return {spec, Position(std::move(h)), std::move(step)};
}

std::optional<std::vector<int>> find_isomorphism(const GameSpec& a, const GameSpec& b)
{
    const int n = a.size();
    if (n != b.size() || a.set_count() != b.set_count()) return std::nullopt;
    const auto un = static_cast<std::size_t>(n);

    auto co = [un](const GameSpec& g) {
        std::vector<int> m(un * un, 0);
        for (const auto& s : g.move_sets())
            for (int u : s)
                for (int v : s) ++m[static_cast<std::size_t>(u) * un + static_cast<std::size_t>(v)];
        return m;
    };
    const auto ca = co(a);
    const auto cb = co(b);

    std::vector<MoveSet> target = b.move_sets();
    std::sort(target.begin(), target.end());

    std::vector<int> perm(un, -1);
    std::vector<char> used(un, 0);

    auto verify = [&]() {
        std::vector<MoveSet> mapped;
        for (const auto& s : a.move_sets()) {
            MoveSet t;
            for (int v : s) t.push_back(perm[static_cast<std::size_t>(v)]);
            std::sort(t.begin(), t.end());
            mapped.push_back(std::move(t));
        }
        std::sort(mapped.begin(), mapped.end());
        return mapped == target;
    };

    auto search = [&](auto&& self, std::size_t v) -> bool {
        if (v == un) return verify();
        for (std::size_t w = 0; w < un; ++w) {
            if (used[w]) continue;
            bool ok = true;
            for (std::size_t u = 0; u <= v && ok; ++u) {
                const std::size_t pu = u == v ? w : static_cast<std::size_t>(perm[u]);
                ok = ca[v * un + u] == cb[w * un + pu];
            }
            if (!ok) continue;
            perm[v] = static_cast<int>(w);
            used[w] = 1;
            if (self(self, v + 1)) return true;
            used[w] = 0;
            perm[v] = -1;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return perm;
}

std::optional<Identification> identify_family(const GameSpec& spec)
{
    const int n = spec.size();
    if (n < 1) return std::nullopt;
    std::vector<Family> candidates{Family::nim(n)};
    for (int k = 2; k <= n; ++k) candidates.push_back(Family::path(n, k));
    for (int k = 1; k <= n; ++k) candidates.push_back(Family::necklace(n, k));
    for (int k = 2; k < n; ++k) candidates.push_back(Family::circular(n, k));
    if (n <= 12)
        for (int k = 2; k < n; ++k) candidates.push_back(Family::moore(n, k));
    for (const auto& f : candidates) {
        GameSpec g;
        try {
            g = build_spec(f);
        } catch (const ParameterError&) {
            continue;
        }
        if (g.set_count() != spec.set_count()) continue;
        if (auto perm = find_isomorphism(spec, g)) return Identification{f, std::move(*perm)};
    }
    return std::nullopt;
}

const GameSpec& ReductionPipeline::final_spec(const GameSpec& original) const
{
    return steps.empty() ? original : steps.back().spec;
}

ReductionPipeline reduce_pipeline(const GameSpec& spec, const Position& pos)
{
    check_position(spec, pos);
    ReductionPipeline out;
    GameSpec cur = spec;
    Position cur_pos = pos;

    if (std::any_of(pos.heights().begin(), pos.heights().end(), [](Height h) { return h == 0; })) {
        Reduced r = zero_reduce(cur, cur_pos);
        cur = r.spec;
        cur_pos = r.pos;
        out.steps.push_back(std::move(r));
    }

    for (;;) {
        const int n = cur.size();
        std::map<std::vector<char>, std::vector<int>> classes;
        for (int v = 0; v < n; ++v) {
            std::vector<char> sig(cur.set_count());
            for (std::size_t s = 0; s < cur.set_count(); ++s) sig[s] = cur.in_set(s, v) ? 1 : 0;
            classes[sig].push_back(v);
        }
        std::optional<std::vector<int>> pick;
        for (auto& [sig, members] : classes)
            if (members.size() > 1 && (!pick || members.front() < pick->front())) pick = members;
        if (!pick) break;
        MergeResult m = merge_reduce(cur, *pick);
        Position mapped = m.mapper(cur_pos);
        cur = m.spec;
        cur_pos = mapped;
        out.steps.push_back({std::move(m.spec), std::move(mapped), std::move(m.step)});
    }

    out.identified = identify_family(cur);
    return out;
}

}  // namespace nnim
