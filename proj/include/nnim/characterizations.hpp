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
#include <span>
#include <string>
#include <vector>

#include "nnim/setnim.hpp"

namespace nnim {

/// Quantities the P-position test for NN(n, ceil(n/2)) is built from.
///
/// Stacks split as a_1..a_l, optional center c, b_1..b_l with l = floor(n/2).
/// Window sums s_i = p_i + ... + p_{i+k-2} for i = 2..l+1.
struct DerivedQuantities {
    int half = 0;          // l
    Height A = 0;          // a_1 + ... + a_l
    Height B = 0;          // b_1 + ... + b_l
    Height m = 0;          // min(p_1, p_n)
    std::vector<Height> s; // s[0] = s_2, ..., s[l-1] = s_{l+1}
    Height s_star = 0;
    int t = 2;             // smallest i with s_i = s_star
    Height Delta = 0;      // A - B
    Height delta_me = 0;   // s_star - m; Case-1 code reads -delta_me

    Height s_at(int i) const { return s.at(static_cast<std::size_t>(i - 2)); }
};

/// Works on raw heights; n >= 3 and k = ceil(n/2) are implied.
DerivedQuantities derived_quantities(std::span<const Height> p);

/// Throws DomainError unless spec is NN(n, ceil(n/2)) with n >= 3.
DerivedQuantities derived_quantities(const GameSpec& spec, const Position& pos);

struct PredicateReport {
    std::string predicate;
    bool holds = false;
    std::optional<std::string> witness;  // present iff holds is false
};

/// (SE) A = B together with (ME) m = s*.
PredicateReport in_S_ell(const GameSpec& spec, const Position& pos);
bool in_S_ell(std::span<const Height> p);

/// p_1 = p_2 + ... + p_{n-1} = p_n, for NN(n, n-1), n >= 3.
bool p_nn_n_minus_1(const GameSpec& spec, const Position& pos);
/// p_1 = p_3 + ... + p_{n-1} and p_n = p_2 + ... + p_{n-2}, for NN(n, n-2), n >= 4.
bool p_nn_n_minus_2(const GameSpec& spec, const Position& pos);

/// PathNim with k >= ceil(n/2): k-1 consecutive zeros with equal non-empty
/// sides, or the all-zero position when n = k.
bool p_path(const GameSpec& spec, const Position& pos);
bool p_path(int k, std::span<const Height> p);

/// CN(3,2): equal heights. CN(4,2): (a,b,a,b).
bool p_cn_small(const GameSpec& spec, const Position& pos);

enum class ClosedFormKind {
    None,
    SEll,          // NN(n, ceil(n/2))
    Anchor,        // NN(n, n-l), 1 <= l < floor(n/2), via NN(2l+1, l+1)
    SingleSet,     // one move set covering everything: P iff empty
    Path,          // PN(n, k), k >= ceil(n/2)
    CircularSmall  // CN(3,2), CN(4,2)
};

struct ClosedFormCoverage {
    ClosedFormKind kind = ClosedFormKind::None;
    int anchor_half = 0;  // l for Anchor
    std::string name;
};

/// Which closed form, if any, covers the game.
ClosedFormCoverage closed_form_coverage(const GameSpec& spec);

/// Closed-form verdict; empty for games without a known characterization.
std::optional<PredicateReport> closed_form(const GameSpec& spec, const Position& pos);

/// Weights w with w . p = 0 for every P-position the closed form admits, when
/// such a single linear equation exists (used to prune move searches).
std::optional<std::vector<Height>> closed_form_linear_constraint(const GameSpec& spec);

/// (n, k) for NN(n,k) and for clasp games with c = 2.
std::optional<std::pair<int, int>> necklace_params(const GameSpec& spec);

}  // namespace nnim
