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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "nnim/characterizations.hpp"
#include "nnim/oracle.hpp"
#include "nnim/reductions.hpp"
#include "nnim/strategy.hpp"

using namespace nnim;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool ok = true;
    std::string detail;
};

int failures = 0;

void report(const char* name, const Verdict& v) {
    std::printf("%s  %s: %s\n", v.ok ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failures;
}

void fail(Verdict& v, const std::string& why) {
    if (v.ok) v.detail = why;
    v.ok = false;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<Height> box(const GameSpec& spec, Height cap) {
    return std::vector<Height>(static_cast<std::size_t>(spec.size()), cap);
}

Position random_position(std::mt19937_64& rng, int n, Height cap) {
    std::uniform_int_distribution<Height> d(0, cap);
    std::vector<Height> h(static_cast<std::size_t>(n));
    for (auto& x : h) x = d(rng);
    return Position(h);
}

// closed forms

struct Sweep {
    Family family;
    Height cap;
    std::function<bool(const GameSpec&, const Position&)> pred;
    const char* pred_name;
};

Verdict closed_forms() {
    auto s_ell = [](const GameSpec& s, const Position& p) { return in_S_ell(s, p).holds; };
    auto nm1 = [](const GameSpec& s, const Position& p) { return p_nn_n_minus_1(s, p); };
    auto nm2 = [](const GameSpec& s, const Position& p) { return p_nn_n_minus_2(s, p); };
    auto path = [](const GameSpec& s, const Position& p) { return p_path(s, p); };
    auto cn = [](const GameSpec& s, const Position& p) { return p_cn_small(s, p); };
    std::vector<Sweep> sweeps = {
        {Family::necklace(4, 2), 6, s_ell, "S_ell"},        {Family::necklace(5, 3), 5, s_ell, "S_ell"},
        {Family::necklace(6, 3), 4, s_ell, "S_ell"},        {Family::necklace(7, 4), 3, s_ell, "S_ell"},
        {Family::necklace(8, 4), 3, s_ell, "S_ell"},        {Family::necklace(4, 3), 5, nm1, "nn_n_minus_1"},
        {Family::necklace(5, 4), 4, nm1, "nn_n_minus_1"},   {Family::necklace(6, 5), 3, nm1, "nn_n_minus_1"},
        {Family::necklace(7, 6), 3, nm1, "nn_n_minus_1"},   {Family::necklace(6, 4), 3, nm2, "nn_n_minus_2"},
        {Family::necklace(7, 5), 3, nm2, "nn_n_minus_2"},   {Family::path(3, 2), 6, path, "path"},
        {Family::path(4, 2), 5, path, "path"},              {Family::path(5, 3), 4, path, "path"},
        {Family::path(6, 3), 3, path, "path"},              {Family::path(6, 4), 3, path, "path"},
        {Family::circular(3, 2), 6, cn, "cn_small"},        {Family::circular(4, 2), 5, cn, "cn_small"},
    };
    Verdict v;
    std::size_t positions = 0, bad = 0, dispatch_bad = 0;
    double slowest = 0;
    std::string slowest_name;
    for (const auto& sw : sweeps) {
        auto spec = build_spec(sw.family);
        auto t0 = Clock::now();
        Oracle o;
        auto table = o.solve_box(spec, box(spec, sw.cap), 4);
        std::size_t here = 0;
        table->for_each([&](const Position& p, Outcome out) {
            bool want = out == Outcome::P;
            if (sw.pred(spec, p) != want) ++here;
            auto cf = closed_form(spec, p);
            if (!cf || cf->holds != want) ++dispatch_bad;
        });
        double secs = seconds_since(t0);
        positions += table->size();
        bad += here;
        if (secs > slowest) {
            slowest = secs;
            slowest_name = sw.family.to_string();
        }
        if (here) fail(v, sw.family.to_string() + " vs " + sw.pred_name + ": " + std::to_string(here) + " disagreements");
        if (secs >= 60) fail(v, sw.family.to_string() + " took " + std::to_string(secs) + " s");
    }
    if (dispatch_bad) fail(v, std::to_string(dispatch_bad) + " disagreements through closed_form dispatch");
    if (v.ok) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu sweeps, %zu positions, %zu disagreements, slowest %s %.2f s",
                      sweeps.size(), positions, bad, slowest_name.c_str(), slowest);
        v.detail = buf;
    }
    return v;
}

// algorithm traces

std::vector<Height> m_after(const AlgorithmTrace& tr, std::size_t row) {
    std::vector<Height> m(static_cast<std::size_t>(tr.half), -1);
    for (std::size_t r = 0; r <= row; ++r)
        for (std::size_t i = 0; i < tr.rows[r].m.size(); ++i)
            if (tr.rows[r].m[i]) m[i] = *tr.rows[r].m[i];
    return m;
}

struct Row {
    std::string label;
    std::optional<Height> Delta;
    std::vector<Height> m;
    std::optional<Height> delta;
    std::optional<Position> r;
};

bool rows_match(const AlgorithmTrace& tr, const std::vector<Row>& want) {
    std::size_t at = 1;
    for (const auto& w : want) {
        while (at < tr.rows.size() && tr.rows[at].label != w.label) ++at;
        if (at == tr.rows.size()) return false;
        const auto& row = tr.rows[at];
        if (w.Delta && row.Delta != w.Delta) return false;
        if (w.delta && row.delta != w.delta) return false;
        if (w.r && row.r != w.r) return false;
        auto m = m_after(tr, at);
        m.resize(w.m.size());
        if (m != w.m) return false;
        ++at;
    }
    return true;
}

Verdict worked_examples() {
    Verdict v;
    int checks = 0;
    auto expect = [&](bool cond, const std::string& what) {
        ++checks;
        if (!cond) fail(v, what);
    };

    auto a = two_delta(Position{4, 21, 3, 2, 3, 4, 2, 7, 6, 5});
    expect(a.r == Position{4, 21, 0, 0, 0, 4, 2, 7, 6, 5} && a.Delta == 1 && a.delta == 0, "two-delta endpoint (first)");
    expect(rows_match(a.trace, {{"5", 6, {22, 5, 4, 4}, 4, Position{4, 21, 3, 2, 0, 4, 2, 7, 6, 5}},
                                {"4", 4, {20, 3, 2}, 2, Position{4, 21, 3, 0, 0, 4, 2, 7, 6, 5}},
                                {"3", 1, {17, 0}, 0, Position{4, 21, 0, 0, 0, 4, 2, 7, 6, 5}}}),
           "two-delta rows (first)");

    auto b = two_delta(Position{2, 15, 8, 4, 5, 4, 5, 5, 5, 8});
    expect(b.r == Position{2, 15, 8, 2, 0, 4, 5, 5, 5, 8} && b.Delta == 0 && b.delta == 9, "two-delta endpoint (second)");
    expect(rows_match(b.trace, {{"5", 2, {25, 14, 11, 11}, 11, std::nullopt}, {"4", 0, {23, 12, 9}, 9, std::nullopt}}),
           "two-delta rows (second)");

    auto c = delta_alg(a.r);
    expect(c.r == Position{4, 20, 0, 0, 0, 4, 2, 7, 6, 5}, "delta-alg result");
    expect(in_S_ell(std::span<const Height>(c.r.heights())), "delta-alg result in S_ell");

    auto d = small_delta(b.r);
    expect(d.r == Position{2, 15, 4, 0, 0, 0, 3, 5, 5, 8} && d.delta == 1, "small-delta endpoint");
    expect(rows_match(d.trace, {{"y=1", std::nullopt, {21, 8, 5, 5, 5}, 5, Position{2, 15, 8, 0, 0, 2, 5, 5, 5, 8}},
                                {"y=1", std::nullopt, {19, 4, 3, 3, 3}, 3, Position{2, 15, 6, 0, 0, 0, 5, 5, 5, 8}},
                                {"y=2", std::nullopt, {18, 3, 2, 2, 2}, 2, Position{2, 15, 5, 0, 0, 0, 4, 5, 5, 8}},
                                {"y=2", std::nullopt, {17, 2, 1, 1, 1}, 1, Position{2, 15, 4, 0, 0, 0, 3, 5, 5, 8}}}),
           "small-delta blocks");

    auto e = unit_adjust(d.r, d.x, d.y);
    expect(e == Position{2, 15, 3, 0, 0, 0, 2, 5, 5, 8}, "unit adjustment result");
    auto q = derived_quantities(e.span());
    expect(q.A == 20 && q.B == 20 && q.m == 2 && q.s_star == 2, "unit adjustment quantities");

    v.detail = v.ok ? std::to_string(checks) + " checks exact" : v.detail;
    return v;
}

// strategy

Verdict soundness() {
    Verdict v;
    std::size_t n_pos = 0, p_pos = 0, bad = 0;
    for (auto [n, k, cap] : {std::tuple{4, 2, 6}, {6, 3, 4}, {8, 4, 3}}) {
        auto spec = build_spec(Family::necklace(n, k));
        Oracle o;
        auto table = o.solve_box(spec, box(spec, cap), 4);
        table->for_each([&](const Position& p, Outcome out) {
            if (out == Outcome::N) {
                ++n_pos;
                auto mv = winning_move(spec, p, &o);
                bool good = mv && is_legal(spec, p, mv->move);
                if (good) {
                    Position t = apply_move(spec, p, mv->move);
                    good = t == mv->target && in_S_ell(spec, t).holds && o.classify(spec, t) == Outcome::P;
                }
                if (!good) {
                    ++bad;
                    fail(v, spec.family().to_string() + " " + p.to_string() + ": no sound move");
                }
            } else {
                ++p_pos;
                for (const Move& m : legal_moves(spec, p))
                    if (in_S_ell(spec, apply_move(spec, p, m)).holds) {
                        ++bad;
                        fail(v, spec.family().to_string() + " " + p.to_string() + ": option stays in S_ell");
                        break;
                    }
            }
        });
    }
    if (v.ok)
        v.detail = std::to_string(n_pos) + " N-positions answered, " + std::to_string(p_pos) +
                   " P-positions with every option outside S_ell, 0 failures";
    return v;
}

// reductions

Position random_planted(std::mt19937_64& rng, int n, const std::vector<int>& zeros, Height cap) {
    std::uniform_int_distribution<Height> d(1, cap);
    std::vector<Height> h(static_cast<std::size_t>(n));
    for (auto& x : h) x = d(rng);
    for (int z : zeros) h[static_cast<std::size_t>(z)] = 0;
    return Position(h);
}

// Position of the reduced game carried onto the identified family's vertex order.
Position relabeled(const Position& reduced, const std::vector<int>& relabel) {
    std::vector<Height> h(reduced.size());
    for (std::size_t v = 0; v < reduced.size(); ++v) h[static_cast<std::size_t>(relabel[v])] = reduced[v];
    return Position(h);
}

Verdict reductions() {
    Verdict v;
    std::mt19937_64 rng(20261018);
    Oracle o;
    int agree = 0, total = 0;
    auto check = [&](bool same, const std::string& what) {
        ++total;
        if (same) ++agree;
        else fail(v, what);
    };

    auto nn63 = build_spec(Family::necklace(6, 3));
    for (int i = 0; i < 200; ++i) {
        Position p = random_position(rng, 6, 4);
        std::vector<Height> h = p.heights();
        h[rng() % 6] = 0;
        h[rng() % 6] = 0;
        Position q(h);
        auto r = zero_reduce(nn63, q);
        check(o.classify(nn63, q) == o.classify(r.spec, r.pos), "zero " + q.to_string());
    }

    // b_i removed, then a_i and a_{i+1} merged
    for (int i = 0; i < 200; ++i) {
        int l = i % 2 ? 5 : 4;
        int j = 2 + static_cast<int>(rng() % static_cast<unsigned>(l - 3));
        auto spec = build_spec(Family::necklace(2 * l, l));
        Position p = random_planted(rng, 2 * l, {l + j - 1}, l == 4 ? 3 : 2);
        auto z = zero_reduce(spec, p, std::vector<int>{l + j - 1});
        auto m = merge_reduce(z.spec, {z.step.index_map[static_cast<std::size_t>(j - 1)],
                                       z.step.index_map[static_cast<std::size_t>(j)]});
        auto target = build_spec(Family::necklace(2 * l - 2, l - 1));
        bool same_sets = m.spec.same_move_sets(target);
        check(same_sets && o.classify(spec, p) == o.classify(target, m.mapper(z.pos)),
              "merge into NN(" + std::to_string(2 * l - 2) + "," + std::to_string(l - 1) + ") " + p.to_string());
    }

    // A-side zero runs reduced to PN(3,2) and PN(4,2)
    for (int i = 0; i < 400; ++i) {
        bool four = i >= 200;
        int l = 3 + i % 2;
        std::vector<int> zeros;
        for (int a = four ? 3 : 2; a <= l; ++a) zeros.push_back(a - 1);
        if (four) zeros.push_back(l);
        auto spec = build_spec(Family::necklace(2 * l, l));
        Position p = random_planted(rng, 2 * l, zeros, 3);
        auto pipe = reduce_pipeline(spec, p);
        Family want = four ? Family::path(4, 2) : Family::path(3, 2);
        bool ok = pipe.identified && pipe.identified->family == want;
        if (ok) {
            auto fam = build_spec(want);
            Position q = relabeled(pipe.steps.back().pos, pipe.identified->relabel);
            ok = o.classify(spec, p) == o.classify(fam, q);
        }
        check(ok, want.to_string() + " pipeline " + p.to_string());
    }

    auto nn75 = build_spec(Family::necklace(7, 5));
    auto nn53 = build_spec(Family::necklace(5, 3));
    for (int i = 0; i < 200; ++i) {
        Position p = random_position(rng, 7, 3);
        check(o.classify(nn75, p) == o.classify(nn53, anchor_reduce(7, 2, p)), "anchor " + p.to_string());
    }

    if (v.ok) v.detail = "outcome agreement " + std::to_string(agree) + "/" + std::to_string(total);
    return v;
}

// invariance

Verdict invariance() {
    Verdict v;
    std::mt19937_64 rng(5);
    std::size_t checks = 0, kept = 0;
    for (auto [n, k, cap] : {std::tuple{6, 3, 6}, {7, 4, 4}}) {
        auto spec = build_spec(Family::necklace(n, k));
        Oracle o;
        auto members = o.enumerate_p_positions(spec, cap, 4);
        auto zs = invariant_vectors(spec);
        for (int i = 0; i < 500; ++i) {
            const Position& p = members[rng() % members.size()];
            if (!in_S_ell(spec, p).holds) fail(v, "sampled member " + p.to_string() + " outside S_ell");
            for (const auto& z : zs) {
                Height down = indicator_min(z, p);
                Height c_minus = down ? static_cast<Height>(rng() % static_cast<std::uint64_t>(down + 1)) : 0;
                Height c_plus = 1 + static_cast<Height>(rng() % 5);
                std::vector<Height> up = p.heights(), dn = p.heights();
                for (int idx : z.one_indices) {
                    up[static_cast<std::size_t>(idx)] += c_plus;
                    dn[static_cast<std::size_t>(idx)] -= c_minus;
                }
                for (const auto& h : {up, dn}) {
                    ++checks;
                    if (in_S_ell(spec, Position(h)).holds) ++kept;
                    else fail(v, spec.family().to_string() + " " + p.to_string() + " with " + z.label);
                }
            }
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu/%zu shifted members preserved (%.1f%%)", kept, checks,
                  checks ? 100.0 * static_cast<double>(kept) / static_cast<double>(checks) : 0.0);
    if (v.ok) v.detail = buf;
    return v;
}

}  // namespace

int main() {
    auto guard = [](const char* name, Verdict (*fn)()) {
        try {
            report(name, fn());
        } catch (const std::exception& e) {
            report(name, Verdict{false, std::string("exception: ") + e.what()});
        }
    };
    guard("closed forms agree with exhaustive search", closed_forms);
    guard("algorithm traces reproduce the worked examples", worked_examples);
    guard("winning moves are sound", soundness);
    guard("reductions preserve outcomes", reductions);
    guard("S_ell membership is invariant under shifts", invariance);
    std::printf("%d of 5 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
