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

#include "nnim/characterizations.hpp"

#include <algorithm>
#include <numeric>

#include "nnim/reductions.hpp"

namespace nnim {

namespace {

int ceil_half(int n) { return (n + 1) / 2; }

Height sum(std::span<const Height> p, std::size_t from, std::size_t to)  // [from, to)
{
    Height s = 0;
    for (std::size_t i = from; i < to; ++i) s += p[i];
    return s;
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw DomainError(what);
}

std::pair<int, int> require_necklace(const GameSpec& spec, const char* op)
{
    auto nk = necklace_params(spec);
    require(nk.has_value(), std::string(op) + " requires a NecklaceNim game, got " + spec.family().to_string());
    return *nk;
}

}  // namespace

std::optional<std::pair<int, int>> necklace_params(const GameSpec& spec)
{
    const Family& f = spec.family();
    if (f.kind == FamilyKind::Necklace) return std::pair{f.n, f.k};
    if (f.kind == FamilyKind::Clasp && f.c == 2) return std::pair{f.n, f.k};
    return std::nullopt;
}

DerivedQuantities derived_quantities(std::span<const Height> p)
{
    const int n = static_cast<int>(p.size());
    const int l = n / 2;
    const int k = ceil_half(n);
    DerivedQuantities q;
    q.half = l;
    q.A = sum(p, 0, static_cast<std::size_t>(l));
    q.B = sum(p, static_cast<std::size_t>(n - l), static_cast<std::size_t>(n));
    q.m = std::min(p.front(), p.back());
    q.s.resize(static_cast<std::size_t>(l));
    for (int i = 2; i <= l + 1; ++i) {
        // 1-based stacks i .. i+k-2
        q.s[static_cast<std::size_t>(i - 2)] = sum(p, static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i + k - 2));
    }
    auto it = std::min_element(q.s.begin(), q.s.end());
    q.s_star = *it;
    q.t = static_cast<int>(it - q.s.begin()) + 2;
    q.Delta = q.A - q.B;
    q.delta_me = q.s_star - q.m;
    return q;
}

DerivedQuantities derived_quantities(const GameSpec& spec, const Position& pos)
{
    auto [n, k] = require_necklace(spec, "derived quantities");
    require(n >= 3, "derived quantities need n >= 3");
    require(k == ceil_half(n), "derived quantities need k = ceil(n/2), got " + spec.family().to_string());
    check_position(spec, pos);
    return derived_quantities(pos.span());
}

bool in_S_ell(std::span<const Height> p)
{
    auto q = derived_quantities(p);
    return q.A == q.B && q.m == q.s_star;
}

PredicateReport in_S_ell(const GameSpec& spec, const Position& pos)
{
    auto q = derived_quantities(spec, pos);
    PredicateReport r{"S_ell", q.A == q.B && q.m == q.s_star, std::nullopt};
    if (!r.holds) {
        std::string w;
        if (q.A != q.B) w = "SE: A=" + std::to_string(q.A) + ", B=" + std::to_string(q.B);
        if (q.m != q.s_star) {
            if (!w.empty()) w += "; ";
            w += "ME: m=" + std::to_string(q.m) + ", s*=" + std::to_string(q.s_star);
        }
        r.witness = w;
    }
    return r;
}

bool p_nn_n_minus_1(const GameSpec& spec, const Position& pos)
{
    auto [n, k] = require_necklace(spec, "NN(n,n-1) predicate");
    require(n >= 3 && k == n - 1, "NN(n,n-1) predicate needs k = n-1 and n >= 3");
    check_position(spec, pos);
    auto p = pos.span();
    const Height middle = sum(p, 1, static_cast<std::size_t>(n - 1));
    return p[0] == middle && middle == p[static_cast<std::size_t>(n - 1)];
}

bool p_nn_n_minus_2(const GameSpec& spec, const Position& pos)
{
    auto [n, k] = require_necklace(spec, "NN(n,n-2) predicate");
    require(n >= 4 && k == n - 2, "NN(n,n-2) predicate needs k = n-2 and n >= 4");
    check_position(spec, pos);
    auto p = pos.span();
    const auto un = static_cast<std::size_t>(n);
    return p[0] == sum(p, 2, un - 1) && p[un - 1] == sum(p, 1, un - 2);
}

bool p_path(int k, std::span<const Height> p)
{
    const int n = static_cast<int>(p.size());
    if (n == k) return std::all_of(p.begin(), p.end(), [](Height h) { return h == 0; });
    const int zeros = k - 1;
    for (int u = 1; u + zeros < n; ++u) {
        bool run = true;
        for (int i = u; i < u + zeros; ++i)
            if (p[static_cast<std::size_t>(i)] != 0) {
                run = false;
                break;
            }
        if (!run) continue;
        if (sum(p, 0, static_cast<std::size_t>(u)) ==
            sum(p, static_cast<std::size_t>(u + zeros), static_cast<std::size_t>(n)))
            return true;
    }
    return false;
}

bool p_path(const GameSpec& spec, const Position& pos)
{
    const Family& f = spec.family();
    require(f.kind == FamilyKind::Path, "PathNim predicate requires a PathNim game, got " + f.to_string());
    require(f.k >= ceil_half(f.n), "PathNim predicate needs k >= ceil(n/2)");
    check_position(spec, pos);
    return p_path(f.k, pos.span());
}

bool p_cn_small(const GameSpec& spec, const Position& pos)
{
    const Family& f = spec.family();
    require(f.kind == FamilyKind::Circular && f.k == 2 && (f.n == 3 || f.n == 4),
            "small CircularNim predicate covers CN(3,2) and CN(4,2) only");
    check_position(spec, pos);
    if (f.n == 3) return pos[0] == pos[1] && pos[1] == pos[2];
    return pos[0] == pos[2] && pos[1] == pos[3];
}

ClosedFormCoverage closed_form_coverage(const GameSpec& spec)
{
    const Family& f = spec.family();
    if (auto nk = necklace_params(spec)) {
        auto [n, k] = *nk;
        if (spec.set_count() == 1) return {ClosedFormKind::SingleSet, 0, "single_set"};
        if (n >= 3 && k == ceil_half(n)) return {ClosedFormKind::SEll, 0, "S_ell"};
        const int l = n - k;
        if (n >= 4 && l >= 1 && l < n / 2) return {ClosedFormKind::Anchor, l, "S_ell"};
        return {};
    }
    switch (f.kind) {
    case FamilyKind::Path:
        if (f.k >= ceil_half(f.n)) return {ClosedFormKind::Path, 0, "PathNim"};
        return {};
    case FamilyKind::Circular:
        if (f.k == 2 && (f.n == 3 || f.n == 4)) return {ClosedFormKind::CircularSmall, 0, "CN_small"};
        return {};
    default:
        return {};
    }
}

std::optional<PredicateReport> closed_form(const GameSpec& spec, const Position& pos)
{
    auto cov = closed_form_coverage(spec);
    switch (cov.kind) {
    case ClosedFormKind::None: return std::nullopt;
    case ClosedFormKind::SEll: return in_S_ell(spec, pos);
    case ClosedFormKind::Anchor: {
        const int n = spec.size();
        const int l = cov.anchor_half;
        Position reduced = anchor_reduce(n, l, pos);
        GameSpec anchor = build_spec(Family::necklace(2 * l + 1, l + 1));
        PredicateReport r = in_S_ell(anchor, reduced);
        r.predicate = "S_ell via " + anchor.family().to_string();
        return r;
    }
    case ClosedFormKind::SingleSet: {
        check_position(spec, pos);
        PredicateReport r{"single_set", is_terminal(pos), std::nullopt};
        if (!r.holds) r.witness = "non-zero stacks in a single move set";
        return r;
    }
    case ClosedFormKind::Path: {
        PredicateReport r{"PathNim", p_path(spec, pos), std::nullopt};
        if (!r.holds) r.witness = "no k-1 zero run with equal side sums";
        return r;
    }
    case ClosedFormKind::CircularSmall: {
        PredicateReport r{"CN_small", p_cn_small(spec, pos), std::nullopt};
        if (!r.holds) r.witness = spec.size() == 3 ? "heights not all equal" : "not of the form (a,b,a,b)";
        return r;
    }
    }
    return std::nullopt;
}

std::optional<std::vector<Height>> closed_form_linear_constraint(const GameSpec& spec)
{
    auto cov = closed_form_coverage(spec);
    const auto n = static_cast<std::size_t>(spec.size());
    std::vector<Height> w(n, 0);
    switch (cov.kind) {
    case ClosedFormKind::SEll: {
        const std::size_t l = n / 2;
        for (std::size_t i = 0; i < l; ++i) {
            w[i] = 1;
            w[n - 1 - i] = -1;
        }
        return w;
    }
    case ClosedFormKind::Anchor: {
        // stacks l+1 .. n-l collapse into the anchor's center
        const auto l = static_cast<std::size_t>(cov.anchor_half);
        for (std::size_t i = 0; i < l; ++i) {
            w[i] = 1;
            w[n - 1 - i] = -1;
        }
        return w;
    }
    case ClosedFormKind::CircularSmall:
        w[0] = 1;
        w[n == 3 ? 1 : 2] = -1;
        return w;
    default:
        return std::nullopt;
    }
}

}  // namespace nnim
