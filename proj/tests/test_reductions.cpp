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

#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "nnim/characterizations.hpp"
#include "nnim/oracle.hpp"
#include "nnim/reductions.hpp"

using namespace nnim;

namespace {

GameSpec nn(int n, int k) { return build_spec(Family::necklace(n, k)); }

// 0-based stack index of a_i and b_i in NN(2l,l).
int a_(int i) { return i - 1; }
int b_(int l, int i) { return l + i - 1; }

Position random_with_zeros(std::mt19937_64& rng, int n, const std::vector<int>& zeros, Height cap) {
    std::uniform_int_distribution<Height> d(1, cap);
    std::vector<Height> h(static_cast<std::size_t>(n));
    for (auto& x : h) x = d(rng);
    for (int z : zeros) h[static_cast<std::size_t>(z)] = 0;
    return Position(h);
}

}  // namespace

TEST_CASE("anchor reduce examples") {
    CHECK(anchor_reduce(6, 2, Position{1, 2, 3, 4, 5, 6}) == Position{1, 2, 7, 5, 6});
    CHECK(anchor_reduce(7, 1, Position{1, 1, 1, 1, 1, 1, 1}) == Position{1, 5, 1});
    auto r = anchor_reduction(nn(7, 5), Position{1, 2, 3, 4, 5, 6, 7});
    CHECK(r.spec.family() == Family::necklace(5, 3));
    CHECK(r.pos == Position{1, 2, 12, 6, 7});
}

TEST_CASE("anchor reduce preserves outcome") {
    std::mt19937_64 rng(101);
    Oracle o;
    auto big = nn(7, 5), small = nn(5, 3);
    for (int i = 0; i < 200; ++i) {
        Position p(brute::random_vec(rng, 7, 3));
        CHECK(o.classify(big, p) == o.classify(small, anchor_reduce(7, 2, p)));
    }
}

TEST_CASE("merge") {
    auto r = merge_reduce(nn(7, 5), {2, 3, 4});
    CHECK(r.spec.same_move_sets(nn(5, 3)));
    CHECK(r.mapper(Position{1, 2, 3, 4, 5, 6, 7}) == Position{1, 2, 12, 6, 7});

    auto id = merge_reduce(nn(5, 3), {3});
    CHECK(id.spec.same_move_sets(nn(5, 3)));
    CHECK(id.mapper(Position{1, 2, 3, 4, 5}) == Position{1, 2, 3, 4, 5});

    CHECK_FALSE(mergeable(nn(5, 3), {0, 1}));
    CHECK_THROWS_AS(merge_reduce(nn(5, 3), {0, 1}), DomainError);
}

TEST_CASE("merge preserves outcome") {
    std::mt19937_64 rng(103);
    Oracle o;
    auto spec = nn(7, 5);
    auto r = merge_reduce(spec, {2, 3, 4});
    for (int i = 0; i < 200; ++i) {
        Position p(brute::random_vec(rng, 7, 3));
        CHECK(o.classify(spec, p) == o.classify(r.spec, r.mapper(p)));
    }
}

TEST_CASE("subsume") {
    auto s = nn(6, 3);
    CHECK(subsume(s).same_move_sets(s));
    auto g = GameSpec(2, {{0, 1}}, Family::generic(2));
    CHECK(subsume(subsume(g)).same_move_sets(g));
    CHECK(prune_to_maximal({{0}, {0, 1}}) == std::vector<MoveSet>{{0, 1}});
}

TEST_CASE("zero reduce") {
    auto spec = nn(6, 3);
    auto id = zero_reduce(spec, Position{1, 2, 3, 4, 5, 6});
    CHECK(id.spec.same_move_sets(spec));
    CHECK(id.pos == Position{1, 2, 3, 4, 5, 6});

    std::mt19937_64 rng(107);
    Oracle o;
    for (int i = 0; i < 200; ++i) {
        Position p(brute::random_vec(rng, 6, 3));
        if (is_terminal(p)) continue;
        auto r = zero_reduce(spec, p);
        for (Height h : r.pos.heights()) CHECK(h > 0);
        CHECK(o.classify(spec, p) == o.classify(r.spec, r.pos));
    }
}

TEST_CASE("zero then merge turns NN(2l,l) into NN(2l-2,l-1)") {
    for (int l : {4, 5, 6}) {
        for (int i = 2; i < l - 1; ++i) {
            CAPTURE(l);
            CAPTURE(i);
            auto spec = nn(2 * l, l);
            std::mt19937_64 rng(static_cast<unsigned>(l * 10 + i));
            Position p = random_with_zeros(rng, 2 * l, {b_(l, i)}, 3);
            auto z = zero_reduce(spec, p, std::vector<int>{b_(l, i)});
            const auto& map = z.step.index_map;
            auto m = merge_reduce(z.spec, {map[static_cast<std::size_t>(a_(i))],
                                           map[static_cast<std::size_t>(a_(i + 1))]});
            CHECK(m.spec.same_move_sets(nn(2 * l - 2, l - 1)));

            auto pipe = reduce_pipeline(spec, p);
            REQUIRE(pipe.identified);
            CHECK(pipe.identified->family == Family::necklace(2 * l - 2, l - 1));
        }
    }
}

TEST_CASE("zero runs on the A side give small path games") {
    for (int l : {3, 4, 5}) {
        CAPTURE(l);
        auto spec = nn(2 * l, l);
        std::mt19937_64 rng(static_cast<unsigned>(l));

        std::vector<int> z11;
        for (int i = 2; i <= l; ++i) z11.push_back(a_(i));
        auto p11 = reduce_pipeline(spec, random_with_zeros(rng, 2 * l, z11, 3));
        REQUIRE(p11.identified);
        CHECK(p11.identified->family == Family::path(3, 2));
        CHECK(find_isomorphism(p11.final_spec(spec), build_spec(Family::path(3, 2))).has_value());

        std::vector<int> z12;
        for (int i = 3; i <= l; ++i) z12.push_back(a_(i));
        z12.push_back(b_(l, 1));
        auto p12 = reduce_pipeline(spec, random_with_zeros(rng, 2 * l, z12, 3));
        REQUIRE(p12.identified);
        CHECK(p12.identified->family == Family::path(4, 2));
    }
}

TEST_CASE("pipeline preserves outcome") {
    std::mt19937_64 rng(109);
    Oracle o;
    auto spec = nn(8, 4);
    for (int i = 0; i < 100; ++i) {
        std::vector<Height> h = brute::random_vec(rng, 8, 2);
        for (auto& x : h)
            if (rng() % 3 == 0) x = 0;
        Position p(h);
        auto pipe = reduce_pipeline(spec, p);
        const Position& q = pipe.steps.empty() ? p : pipe.steps.back().pos;
        CHECK(o.classify(spec, p) == o.classify(pipe.final_spec(spec), q));
    }
}

TEST_CASE("isomorphism search") {
    auto perm = find_isomorphism(nn(4, 2), build_spec(Family::circular(4, 2)));
    CHECK(perm.has_value());
    CHECK_FALSE(find_isomorphism(nn(5, 3), build_spec(Family::path(5, 3))).has_value());
    auto id = identify_family(build_spec(Family::path(4, 2)));
    REQUIRE(id);
    CHECK(id->family == Family::path(4, 2));
}

TEST_CASE("invariant vectors") {
    auto v42 = invariant_vectors(nn(4, 2));
    REQUIRE(v42.size() == 1);
    CHECK(v42[0].bits == std::vector<int>{1, 1, 1, 1});

    auto v53 = invariant_vectors(nn(5, 3));
    REQUIRE(v53.size() == 2);
    CHECK(v53[0].bits == std::vector<int>{1, 1, 0, 1, 1});
    CHECK(v53[1].bits == std::vector<int>{1, 0, 1, 0, 1});

    auto v105 = invariant_vectors(nn(10, 5));
    CHECK(v105.size() == 4);
    for (const auto& z : v105) CHECK(z.one_indices.size() == 4);
    CHECK_THROWS_AS(invariant_vectors(nn(7, 3)), DomainError);
}

TEST_CASE("indicator minimum") {
    auto z = InvariantVector::from_indices(3, {0, 2}, "z");
    CHECK(indicator_min(z, Position{5, 9, 3}) == 3);
    CHECK(indicator_min(z, Position{0, 0, 0}) == 0);
    CHECK(indicator_min(invariant_vectors(nn(4, 2))[0], Position{1, 2, 1, 2}) == 1);
    CHECK(sigma_min(Position{4, 21, 3, 2, 3, 4, 2, 7, 6, 5}) == 4 + 2 + 2 + 3);
}

TEST_CASE("invariance reduce") {
    auto r = invariance_reduce(nn(4, 2), Position{2, 3, 1, 2});
    CHECK(r.pos == Position{1, 2, 0, 1});
    CHECK(r.step.coefficients == std::vector<Height>{1});
    auto u = invariance_reduce(nn(4, 2), Position{0, 5, 5, 5});
    CHECK(u.pos == Position{0, 5, 5, 5});
    CHECK(u.step.coefficients == std::vector<Height>{0});
}

TEST_CASE("invariance reduce keeps membership") {
    std::mt19937_64 rng(113);
    for (auto [n, k] : {std::pair{6, 3}, {7, 4}}) {
        auto spec = nn(n, k);
        Oracle o;
        auto table = o.enumerate_p_positions(spec, n == 6 ? 6 : 3, 4);
        auto zs = invariant_vectors(spec);
        for (int i = 0; i < 500; ++i) {
            const Position& p = table[rng() % table.size()];
            REQUIRE(in_S_ell(spec, p).holds);
            auto r = invariance_reduce(spec, p);
            CHECK(in_S_ell(spec, r.pos).holds);
            Height sum_c = 0;
            for (Height c : r.step.coefficients) sum_c += c;
            CHECK(sum_c <= p.total());
            for (Height h : r.pos.heights()) CHECK(h >= 0);
            for (const auto& z : zs) CHECK(indicator_min(z, r.pos) == 0);
        }
    }
}
