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
#include <vector>

#include "nnim/setnim.hpp"

namespace nnim {

enum class ReductionKind { Zero, Merge, Subsume, Anchor, Invariance };

const char* to_string(ReductionKind kind);

struct InvariantVector {
    std::vector<int> bits;         // 0/1, one per stack
    std::vector<int> one_indices;  // 0-based positions of the 1s
    std::string label;             // "z_2", ...

    static InvariantVector from_indices(int n, std::vector<int> ones, std::string label);
};

struct ReductionStep {
    ReductionKind kind = ReductionKind::Zero;
    std::vector<int> indices;    // removed (Zero) or merged (Merge, Anchor) stacks, 0-based
    std::vector<int> index_map;  // old stack -> new stack, -1 when removed
    std::size_t sets_before = 0;
    std::size_t sets_after = 0;
    // Invariance only
    std::vector<InvariantVector> vectors;
    std::vector<Height> coefficients;
    std::optional<Height> sigma_min;
};

struct Reduced {
    GameSpec spec;
    Position pos;
    ReductionStep step;
};

/// Drops stacks that are empty and listed in `requested` (all empty stacks
/// when absent), intersects move sets with the survivors and subsumes.
Reduced zero_reduce(const GameSpec& spec, const Position& pos,
                    const std::optional<std::vector<int>>& requested = std::nullopt);

/// Maps positions of the original game to the merge-reduced game.
class MergeMapper {
 public:
    MergeMapper() = default;
    MergeMapper(std::vector<int> index_map, int new_size) : map_(std::move(index_map)), size_(new_size) {}
    Position operator()(const Position& pos) const;
    const std::vector<int>& index_map() const { return map_; }

 private:
    std::vector<int> map_;
    int size_ = 0;
};

struct MergeResult {
    GameSpec spec;
    MergeMapper mapper;
    ReductionStep step;
};

/// True when every move set contains all of C or none of it.
bool mergeable(const GameSpec& spec, const std::vector<int>& C);

/// Collapses C to a single stack placed at min(C). Throws DomainError when C
/// violates the all-or-nothing condition.
MergeResult merge_reduce(const GameSpec& spec, std::vector<int> C);

/// Removes move sets contained in others. Idempotent.
GameSpec subsume(const GameSpec& spec);

/// NN(n, n-l) position to NN(2l+1, l+1): stacks l+1..n-l summed into the center.
Position anchor_reduce(int n, int l, const Position& pos);

/// Spec-level form of anchor_reduce; the result carries the NN(2l+1,l+1) tag.
Reduced anchor_reduction(const GameSpec& spec, const Position& pos);

/// z_2..z_l, and for odd n the symmetric z_{l+1} last.
std::vector<InvariantVector> invariant_vectors(const GameSpec& spec);

Height indicator_min(const InvariantVector& z, const Position& pos);

/// Sum over i = 2..l of min(a_i, b_{i-1}).
Height sigma_min(const Position& pos);

/// Subtracts c_i z_i in canonical order with c_i the running indicator minimum.
Reduced invariance_reduce(const GameSpec& spec, const Position& pos);

/// Permutation perm with perm[v] the vertex of `b` that vertex v of `a` maps to,
/// when the two collections agree after relabeling.
std::optional<std::vector<int>> find_isomorphism(const GameSpec& a, const GameSpec& b);

struct Identification {
    Family family;
    std::vector<int> relabel;  // reduced vertex -> family vertex
};

/// Tries Nim, PathNim, CircularNim, NecklaceNim and Moore games of the same size.
std::optional<Identification> identify_family(const GameSpec& spec);

struct ReductionPipeline {
    std::vector<Reduced> steps;
    std::optional<Identification> identified;

    const GameSpec& final_spec(const GameSpec& original) const;
};

/// Zero reduction, then merging of stacks with identical membership, then
/// family identification.
ReductionPipeline reduce_pipeline(const GameSpec& spec, const Position& pos);

}  // namespace nnim
