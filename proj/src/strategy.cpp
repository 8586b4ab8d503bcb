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

#include "nnim/strategy.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "nnim/characterizations.hpp"
#include "nnim/oracle.hpp"
#include "nnim/reductions.hpp"

namespace nnim {

namespace {

std::string num(Height v) { return std::to_string(v); }

int require_even(const Position& pos, const std::string& op)
{
    const auto n = static_cast<int>(pos.size());
    if (n < 4 || n % 2 != 0)
        throw DomainError(op + " needs an NN(2l,l) position with even n >= 4, got n=" + std::to_string(n));
    return n / 2;
}

void require(bool ok, const std::string& op, const std::string& what)
{
    if (!ok) throw DomainError(op + " requires " + what);
}

// M[j-2] = min over 2 <= i <= j of (s_i - g), j = 2..upto
std::vector<Height> m_vector(const DerivedQuantities& q, Height g, int upto)
{
    std::vector<Height> M(static_cast<std::size_t>(q.half), 0);
    Height cur = std::numeric_limits<Height>::max();
    for (int j = 2; j <= upto; ++j) {
        cur = std::min(cur, q.s_at(j) - g);
        M[static_cast<std::size_t>(j - 2)] = cur;
    }
    return M;
}

Height& mref(std::vector<Height>& M, int j) { return M[static_cast<std::size_t>(j - 2)]; }

TraceRow make_row(std::string label, std::optional<Height> d, const std::vector<Height>& M, int lo, int hi)
{
    TraceRow row;
    row.label = std::move(label);
    row.d = d;
    row.m.assign(M.size(), std::nullopt);
    for (int j = lo; j <= hi; ++j) row.m[static_cast<std::size_t>(j - 2)] = M[static_cast<std::size_t>(j - 2)];
    return row;
}

std::vector<Height> subtract(const Position& from, const Position& to)
{
    std::vector<Height> out(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) out[i] = from[i] - to[i];
    return out;
}

bool dominated(std::span<const Height> target, std::span<const Height> from)
{
    if (target.size() != from.size()) return false;
    bool changed = false;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (target[i] < 0 || target[i] > from[i]) return false;
        changed = changed || target[i] != from[i];
    }
    return changed;
}

StrategyMove finish(const GameSpec& spec, const Position& pos, const Position& target,
                    std::vector<AlgorithmTrace> traces, std::string route, bool mirrored)
{
    auto mv = assemble_move(spec, pos, target);
    if (!mv) throw std::logic_error("strategy produced " + target.to_string() + ", not a single legal move from " +
                                    pos.to_string());
    if (auto cf = closed_form(spec, target); cf && !cf->holds)
        throw std::logic_error("strategy target " + target.to_string() + " fails " + cf->predicate);
    StrategyMove sm;
    sm.removals = subtract(pos, target);
    sm.move = std::move(*mv);
    sm.target = target;
    sm.traces = std::move(traces);
    sm.route = std::move(route);
    sm.mirrored = mirrored;
    return sm;
}

// Case-1 table on an oriented position (A >= B, m >= s*).
std::vector<Height> case1_target(std::vector<Height> h, std::vector<AlgorithmTrace>& traces, std::string& route)
{
    const std::size_t n = h.size();
    auto q = derived_quantities(h);
    const Height gap = q.m - q.s_star;  // -delta_me

    auto case11 = [&](std::vector<Height> v, const std::string& prefix) {
        auto qq = derived_quantities(v);
        const Height g = qq.m - qq.s_star;
        if (g >= qq.Delta) {
            route = prefix + "1.1";
            v[0] -= g;
            v[n - 1] -= g - qq.Delta;
            return v;
        }
        route = prefix + "1.1 with delta-alg";
        v[0] = qq.s_star;
        DeltaAlgResult res = delta_alg(Position(v));
        traces.push_back(std::move(res.trace));
        return res.r.heights();
    };

    if (h[0] <= h[n - 1]) return case11(h, "case ");
    if (h[0] >= q.m + q.Delta) {
        route = "case 1.2";
        h[0] -= q.Delta + gap;
        h[n - 1] -= gap;
        return h;
    }
    if (gap >= q.Delta) {
        route = "case 1.3";
        const Height adj = q.Delta + q.m - h[0];
        h[0] = q.s_star;
        h[n - 1] -= gap - adj;
        return h;
    }
    h[0] = q.m;
    return case11(h, "case 1.3 then ");
}

std::optional<std::vector<Height>> path_branch(const GameSpec& spec, const std::vector<Height>& h, int l)
{
    const int n = 2 * l;
    const int idx = h[0] == 0 ? 0 : n - 1;
    Reduced red = zero_reduce(spec, Position(h), std::vector<int>{idx});
    GameSpec path = build_spec(Family::path(n - 1, l)).with_height_cap(spec.height_cap());
    if (!red.spec.same_move_sets(path)) return std::nullopt;
    auto t = path_winning_target(path, red.pos);
    if (!t) return std::nullopt;
    std::vector<Height> out = t->heights();
    out.insert(out.begin() + idx, 0);
    return out;
}

// delta = 1 with tied minimum windows: one token from each side, first pair
// landing in S_l that still assembles into a single move from `from`.
std::optional<std::vector<Height>> pair_adjust(const GameSpec& spec, const std::vector<Height>& from,
                                               const Position& r)
{
    const int l = static_cast<int>(r.size()) / 2;
    std::vector<Height> h = r.heights();
    for (int u = 0; u < l; ++u)
        for (int v = l; v < 2 * l; ++v) {
            auto a = static_cast<std::size_t>(u), b = static_cast<std::size_t>(v);
            if (h[a] == 0 || h[b] == 0) continue;
            --h[a];
            --h[b];
            bool ok = in_S_ell(h) && assemble_move(spec, Position(from), Position(h)).has_value();
            if (ok) return h;
            ++h[a];
            ++h[b];
        }
    return std::nullopt;
}

std::optional<StrategyMove> even_necklace_move(const GameSpec& spec, const Position& pos, SearchLimits limits)
{
    const int l = static_cast<int>(pos.size()) / 2;
    std::vector<Height> h = pos.heights();
    auto q = derived_quantities(h);
    bool mirrored = false;
    if (q.B > q.A || (q.A == q.B && mirror(pos) < pos)) {
        std::reverse(h.begin(), h.end());
        q = derived_quantities(h);
        mirrored = true;
    }

    std::vector<AlgorithmTrace> traces;
    std::string route;
    std::optional<std::vector<Height>> target;
    // branches on the recomputed s* - m; the tracked value can undercount
    auto adjust = [&](SmallDeltaResult sd) -> std::vector<Height> {
        Height gap = derived_quantities(sd.r.span()).delta_me;
        while (gap >= 2) {
            SmallDeltaResult again = small_delta(sd.r);
            if (again.r == sd.r) break;
            traces.push_back(again.trace);
            sd = std::move(again);
            gap = derived_quantities(sd.r.span()).delta_me;
        }
        if (gap == 0) return sd.r.heights();
        if (gap != 1) throw DomainError("small_delta left s* - m = " + num(gap));
        try {
            Position u = unit_adjust(sd.r, sd.x, sd.y);
            if (in_S_ell(u.span())) return u.heights();
        } catch (const DomainError&) {
        }
        if (auto p = pair_adjust(spec, h, sd.r)) {
            route += " (pair adjust)";
            return *p;
        }
        throw DomainError("no unit adjustment reaches S_l");
    };
    try {
        if (q.m == 0) {
            route = "path";
            target = path_branch(spec, h, l);
        } else if (q.m >= q.s_star) {
            target = case1_target(h, traces, route);
        } else if (q.Delta == 0) {
            route = "case 2 (Delta=0)";
            SmallDeltaResult sd = small_delta(Position(h));
            traces.push_back(sd.trace);
            target = adjust(sd);
        } else {
            TwoDeltaResult td = two_delta(Position(h));
            traces.push_back(td.trace);
            if (td.Delta == 0 && td.delta > 0) {
                route = "case 2.1";
                SmallDeltaResult sd = small_delta(td.r);
                traces.push_back(sd.trace);
                target = adjust(sd);
            } else if (td.delta == 0 && td.Delta > 0) {
                route = "case 2.2";
                std::vector<Height> r = td.r.heights();
                if (r[0] >= q.m + td.Delta) {
                    r[0] -= td.Delta;
                    target = r;
                } else {
                    DeltaAlgResult da = delta_alg(td.r);
                    traces.push_back(da.trace);
                    target = da.r.heights();
                }
            } else {
                route = "case 2";
                target = td.r.heights();
            }
        }
    } catch (const DomainError&) {
        target.reset();
    }

    if (target && dominated(*target, h) && in_S_ell(*target)) {
        Position t(*target);
        Position oriented(h);
        if (assemble_move(spec, oriented, t)) {
            if (mirrored) t = mirror(t);
            return finish(spec, pos, t, std::move(traces), std::move(route), mirrored);
        }
    }

    // searched in the oriented frame so mirrored inputs land on mirrored targets
    auto fallback = predicate_guided_search(spec, Position(h), [](const Position& p) { return in_S_ell(p.span()); },
                                            closed_form_linear_constraint(spec), limits);
    if (!fallback) throw std::logic_error("no option of " + pos.to_string() + " lies in S_l");
    return finish(spec, pos, mirrored ? mirror(*fallback) : *fallback, {}, "predicate search", mirrored);
}

}  // namespace

std::string render_trace(const AlgorithmTrace& trace)
{
    std::vector<std::string> header{trace.algorithm == "small-delta" ? "x,y" : "j"};
    if (trace.shows_Delta) header.push_back("Delta");
    for (int j = 2; j <= trace.half + 1; ++j) header.push_back("m_" + std::to_string(j));
    if (trace.shows_delta) header.push_back("delta");
    header.push_back("r");

    std::vector<std::vector<std::string>> cells{header};
    for (const auto& row : trace.rows) {
        std::vector<std::string> line{row.label};
        if (trace.shows_Delta) line.push_back(row.Delta ? num(*row.Delta) : "");
        for (const auto& m : row.m) line.push_back(m ? num(*m) : "");
        if (trace.shows_delta) line.push_back(row.delta ? num(*row.delta) : "");
        line.push_back(row.r ? row.r->to_string() : "");
        cells.push_back(std::move(line));
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto& line : cells)
        for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());

    std::ostringstream out;
    out << trace.algorithm << '\n';
    for (const auto& line : cells) {
        std::string text;
        for (std::size_t c = 0; c < line.size(); ++c) {
            if (c > 0) text += " | ";
            if (c + 1 == line.size())
                text += line[c];
            else
                text += std::string(width[c] - line[c].size(), ' ') + line[c];
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out << text << '\n';
    }
    return out.str();
}

TwoDeltaResult two_delta(const Position& pos)
{
    const std::string op = "two_delta";
    const int l = require_even(pos, op);
    auto q = derived_quantities(pos.span());
    require(q.A > q.B, op, "A > B (A=" + num(q.A) + ", B=" + num(q.B) + ")");
    require(q.s_star > q.m, op, "s* > m (s*=" + num(q.s_star) + ", m=" + num(q.m) + ")");
    require(q.m > 0, op, "m > 0");

    std::vector<Height> h = pos.heights();
    Height Delta = q.Delta;
    auto M = m_vector(q, q.m, l + 1);
    Height delta = mref(M, l + 1);

    AlgorithmTrace trace{"two-delta", l, true, true, {}};
    TraceRow init = make_row("", std::nullopt, M, 2, l + 1);
    init.Delta = Delta;
    init.delta = delta;
    init.r = pos;
    trace.rows.push_back(std::move(init));

    for (int j = l; j >= 2; --j) {
        Height& aj = h[static_cast<std::size_t>(j - 1)];
        const Height d = std::min({aj, Delta, mref(M, j)});
        if (d > 0) {
            aj -= d;
            Delta -= d;
            for (int i = 2; i <= j; ++i) mref(M, i) -= d;
            delta = std::min(delta, mref(M, j));
            TraceRow row = make_row(std::to_string(j), d, M, 2, j);
            row.Delta = Delta;
            row.delta = delta;
            row.r = Position(h);
            trace.rows.push_back(std::move(row));
        }
        if (Delta == 0 || delta == 0) break;
    }
    return {Position(std::move(h)), Delta, delta, std::move(trace)};
}

DeltaAlgResult delta_alg(const Position& pos)
{
    const std::string op = "delta_alg";
    const int l = require_even(pos, op);
    auto q = derived_quantities(pos.span());
    require(q.A > q.B, op, "A > B (A=" + num(q.A) + ", B=" + num(q.B) + ")");
    require(q.m == q.s_star, op, "m = s* (m=" + num(q.m) + ", s*=" + num(q.s_star) + ")");

    std::vector<Height> h = pos.heights();
    Height Delta = q.Delta;
    auto M = m_vector(q, q.s_star, q.t - 1);

    AlgorithmTrace trace{"delta-alg", l, true, false, {}};
    TraceRow init = make_row("", std::nullopt, M, 2, q.t - 1);
    init.Delta = Delta;
    init.r = pos;
    trace.rows.push_back(std::move(init));

    for (int j = q.t - 1; Delta > 0 && j >= 2; --j) {
        Height& aj = h[static_cast<std::size_t>(j - 1)];
        const Height d = std::min({aj, Delta, mref(M, j)});
        if (d > 0) {
            aj -= d;
            Delta -= d;
            for (int i = 2; i <= j; ++i) mref(M, i) -= d;
            TraceRow row = make_row(std::to_string(j), d, M, 2, j);
            row.Delta = Delta;
            row.r = Position(h);
            trace.rows.push_back(std::move(row));
        }
    }
    if (Delta > 0) {
        const Height s_last = q.s_at(l + 1);
        require(s_last <= h[0], op, "s_{l+1} <= a_1 at exit (s_{l+1}=" + num(s_last) + ", a_1=" + num(h[0]) + ")");
        h[0] = s_last;
        auto after = derived_quantities(h);
        TraceRow row = make_row("a_1", std::nullopt, M, 2, 1);
        row.Delta = after.Delta;
        row.r = Position(h);
        trace.rows.push_back(std::move(row));
    }
    return {Position(std::move(h)), std::move(trace)};
}

SmallDeltaResult small_delta(const Position& pos)
{
    const std::string op = "small_delta";
    const int l = require_even(pos, op);
    auto q = derived_quantities(pos.span());
    require(q.A == q.B, op, "A = B (A=" + num(q.A) + ", B=" + num(q.B) + ")");
    require(q.s_star > q.m, op, "s* > m (s*=" + num(q.s_star) + ", m=" + num(q.m) + ")");
    require(q.m > 0, op, "m > 0");

    std::vector<Height> h = pos.heights();
    auto M = m_vector(q, q.m, l + 1);
    Height delta = mref(M, l + 1);
    int x = l;
    int y = 1;

    AlgorithmTrace trace{"small-delta", l, false, true, {}};
    TraceRow init = make_row("", std::nullopt, M, 2, l + 1);
    init.delta = delta;
    init.r = pos;
    trace.rows.push_back(std::move(init));

    while (delta > 1 && x >= 2 && y <= l - 1) {
        Height& ax = h[static_cast<std::size_t>(x - 1)];
        Height& by = h[static_cast<std::size_t>(l + y - 1)];
        const Height d = std::min({ax, by, delta / 2});
        if (d > 0) {
            ax -= d;
            by -= d;
            for (int i = 2; i <= x; ++i) mref(M, i) -= d;
            trace.rows.push_back(make_row("x=" + std::to_string(x), d, M, 2, x));
            for (int i = y + 2; i <= l + 1; ++i) mref(M, i) = std::min(mref(M, i) - d, mref(M, i - 1));
            delta = mref(M, l + 1);
            TraceRow row = make_row("y=" + std::to_string(y), d, M, y + 2, l + 1);
            row.delta = delta;
            row.r = Position(h);
            trace.rows.push_back(std::move(row));
        }
        const bool a_empty = ax == 0;
        const bool b_empty = by == 0;
        if (a_empty) --x;
        if (b_empty) ++y;
    }
    return {Position(std::move(h)), x, y, delta, std::move(trace)};
}

Position unit_adjust(const Position& r, int x, int y)
{
    const std::string op = "unit_adjust";
    const int l = require_even(r, op);
    auto q = derived_quantities(r.span());
    require(q.s_star - q.m == 1, op, "s* - m = 1 (s*=" + num(q.s_star) + ", m=" + num(q.m) + ")");
    require(x >= 1 && x <= l && y >= 1 && y <= l, op, "flanks inside 1..l");

    const bool a_in = q.t <= x;
    const bool b_in = q.t >= y + 2;
    std::vector<Height> h = r.heights();
    std::size_t a_idx = 0;
    if (a_in != b_in)
        a_idx = static_cast<std::size_t>(x - 1);
    else if (a_in)
        a_idx = static_cast<std::size_t>(q.t - 2);
    else
        throw DomainError(op + ": neither flank lies in the minimum window");
    const auto b_idx = static_cast<std::size_t>(l + y - 1);
    if (h[a_idx] < 1 || h[b_idx] < 1) throw DomainError(op + ": adjustment would take an empty stack below zero");
    --h[a_idx];
    --h[b_idx];
    return Position(std::move(h));
}

StrategyMove case1_move(const GameSpec& spec, const Position& pos)
{
    const std::string op = "case1_move";
    auto q = derived_quantities(spec, pos);
    require_even(pos, op);
    require(q.A >= q.B, op, "A >= B (A=" + num(q.A) + ", B=" + num(q.B) + ")");
    require(q.m >= q.s_star, op, "m >= s* (m=" + num(q.m) + ", s*=" + num(q.s_star) + ")");
    require(!(q.A == q.B && q.m == q.s_star), op, "a position outside S_l");
    require(q.m > 0, op, "m > 0");
    std::vector<AlgorithmTrace> traces;
    std::string route;
    auto target = case1_target(pos.heights(), traces, route);
    return finish(spec, pos, Position(std::move(target)), std::move(traces), std::move(route), false);
}

std::optional<Position> predicate_guided_search(const GameSpec& spec, const Position& pos,
                                                const PositionPredicate& pred,
                                                const std::optional<std::vector<Height>>& weights,
                                                SearchLimits limits)
{
    check_position(spec, pos);
    const std::size_t n = pos.size();
    if (weights && weights->size() != n) throw ParameterError("constraint weights do not match the game size");
    Height V = 0;
    if (weights)
        for (std::size_t i = 0; i < n; ++i) V += (*weights)[i] * pos[i];

    // odometer over the free coordinates, last fastest
    auto advance = [&pos](std::vector<Height>& r, const std::vector<int>& free) {
        for (std::size_t i = free.size(); i-- > 0;) {
            if (r[i] < pos[static_cast<std::size_t>(free[i])]) {
                ++r[i];
                return true;
            }
            r[i] = 0;
        }
        return false;
    };

    bool cut = false;
    std::vector<Height> child(n);
    for (std::size_t s = 0; s < spec.set_count(); ++s) {
        const MoveSet& set = spec.move_set(s);
        std::optional<int> pivot;
        if (weights)
            for (int v : set)
                if ((*weights)[static_cast<std::size_t>(v)] != 0) pivot = v;
        if (weights && !pivot && V != 0) continue;

        std::vector<int> free;
        for (int v : set)
            if (!pivot || v != *pivot) free.push_back(v);
        std::vector<Height> r(free.size(), 0);
        std::uint64_t tried = 0;
        for (;;) {
            if (++tried > limits.candidates_per_set) {
                cut = true;
                break;
            }
            child = pos.heights();
            Height removed = 0;
            Height partial = 0;
            for (std::size_t i = 0; i < free.size(); ++i) {
                const auto v = static_cast<std::size_t>(free[i]);
                child[v] -= r[i];
                removed += r[i];
                if (weights) partial += (*weights)[v] * r[i];
            }
            bool ok = true;
            if (pivot) {
                const auto pv = static_cast<std::size_t>(*pivot);
                const Height w = (*weights)[pv];
                const Height rest = V - partial;
                if (rest % w != 0) {
                    ok = false;
                } else {
                    const Height rp = rest / w;
                    ok = rp >= 0 && rp <= pos[pv];
                    if (ok) {
                        child[pv] -= rp;
                        removed += rp;
                    }
                }
            }
            if (ok && removed > 0) {
                Position candidate(child);
                if (pred(candidate)) return candidate;
            }
            if (!advance(r, free)) break;
        }
    }
    if (cut) throw BudgetExceeded("move search exceeded " + std::to_string(limits.candidates_per_set) +
                                  " candidates in a move set");
    return std::nullopt;
}

std::optional<Position> path_winning_target(const GameSpec& spec, const Position& pos)
{
    const Family& f = spec.family();
    if (f.kind != FamilyKind::Path || f.k < (f.n + 1) / 2)
        throw DomainError("PathNim move search needs PN(n,k) with k >= ceil(n/2), got " + f.to_string());
    check_position(spec, pos);
    const int n = f.n;
    const int k = f.k;
    const std::vector<Height>& p = pos.heights();
    if (n == k) {
        if (is_terminal(pos)) return std::nullopt;
        return Position(std::vector<Height>(static_cast<std::size_t>(n), 0));
    }
    for (std::size_t s = 0; s < spec.set_count(); ++s) {
        auto in_w = [&](int i) { return spec.in_set(s, i); };
        for (int u = 1; u + k - 1 <= n - 1; ++u) {
            const int run_end = u + k - 2;
            bool ok = true;
            for (int i = u; i <= run_end && ok; ++i) ok = p[static_cast<std::size_t>(i)] == 0 || in_w(i);
            if (!ok) continue;
            Height L = 0, R = 0, Lw = 0, Rw = 0;
            for (int i = 0; i < u; ++i) {
                L += p[static_cast<std::size_t>(i)];
                if (in_w(i)) Lw += p[static_cast<std::size_t>(i)];
            }
            for (int i = run_end + 1; i < n; ++i) {
                R += p[static_cast<std::size_t>(i)];
                if (in_w(i)) Rw += p[static_cast<std::size_t>(i)];
            }
            if ((L >= R && L - R > Lw) || (R > L && R - L > Rw)) continue;
            std::vector<Height> t = p;
            for (int i = u; i <= run_end; ++i) t[static_cast<std::size_t>(i)] = 0;
            Height left = L > R ? L - R : 0;
            for (int i = u - 1; i >= 0 && left > 0; --i)
                if (in_w(i)) {
                    const Height take = std::min(left, t[static_cast<std::size_t>(i)]);
                    t[static_cast<std::size_t>(i)] -= take;
                    left -= take;
                }
            Height right = R > L ? R - L : 0;
            for (int i = run_end + 1; i < n && right > 0; ++i)
                if (in_w(i)) {
                    const Height take = std::min(right, t[static_cast<std::size_t>(i)]);
                    t[static_cast<std::size_t>(i)] -= take;
                    right -= take;
                }
            if (t == p) return std::nullopt;  // already of the zero-run form
            return Position(std::move(t));
        }
    }
    return std::nullopt;
}

std::optional<StrategyMove> winning_move(const GameSpec& spec, const Position& pos, Oracle* oracle,
                                         SearchLimits limits)
{
    check_position(spec, pos);
    if (is_terminal(pos)) return std::nullopt;
    const ClosedFormCoverage cov = closed_form_coverage(spec);
    switch (cov.kind) {
    case ClosedFormKind::SEll: {
        if (in_S_ell(pos.span())) return std::nullopt;
        if (spec.size() % 2 == 0 && spec.size() >= 4) return even_necklace_move(spec, pos, limits);
        auto t = predicate_guided_search(
            spec, pos, [](const Position& p) { return in_S_ell(p.span()); }, closed_form_linear_constraint(spec),
            limits);
        if (!t) throw std::logic_error("no option of " + pos.to_string() + " lies in S_l");
        return finish(spec, pos, *t, {}, "predicate search", false);
    }
    case ClosedFormKind::Anchor: {
        Reduced red = anchor_reduction(spec, pos);
        auto sub = winning_move(red.spec, red.pos, oracle, limits);
        if (!sub) return std::nullopt;
        const int n = spec.size();
        const int l = cov.anchor_half;
        std::vector<Height> t = pos.heights();
        for (int i = 0; i < l; ++i) {
            t[static_cast<std::size_t>(i)] = sub->target[static_cast<std::size_t>(i)];
            t[static_cast<std::size_t>(n - 1 - i)] = sub->target[static_cast<std::size_t>(2 * l - i)];
        }
        Height take = red.pos[static_cast<std::size_t>(l)] - sub->target[static_cast<std::size_t>(l)];
        for (int i = l; i < n - l && take > 0; ++i) {
            const Height d = std::min(take, t[static_cast<std::size_t>(i)]);
            t[static_cast<std::size_t>(i)] -= d;
            take -= d;
        }
        return finish(spec, pos, Position(std::move(t)), std::move(sub->traces),
                      "anchor " + red.spec.family().to_string() + ": " + sub->route, sub->mirrored);
    }
    case ClosedFormKind::SingleSet:
        return finish(spec, pos, Position(std::vector<Height>(pos.size(), 0)), {}, "single set", false);
    case ClosedFormKind::Path: {
        auto t = path_winning_target(spec, pos);
        if (!t) return std::nullopt;
        return finish(spec, pos, *t, {}, "path", false);
    }
    case ClosedFormKind::CircularSmall: {
        auto pred = [&spec](const Position& p) { return p_cn_small(spec, p); };
        if (pred(pos)) return std::nullopt;
        auto t = predicate_guided_search(spec, pos, pred, closed_form_linear_constraint(spec), limits);
        if (!t) throw std::logic_error("no option of " + pos.to_string() + " has the closed form");
        return finish(spec, pos, *t, {}, "predicate search", false);
    }
    case ClosedFormKind::None: break;
    }

    std::unique_ptr<Oracle> own;
    if (!oracle) {
        own = std::make_unique<Oracle>();
        oracle = own.get();
    }
    if (oracle->classify(spec, pos) == Outcome::P) return std::nullopt;
    auto options = oracle->winning_options(spec, pos);
    if (options.empty()) throw std::logic_error("oracle reports N without a winning option");
    return finish(spec, pos, apply_move(spec, pos, options.front()), {}, "oracle search", false);
}

Move stalling_move(const GameSpec& spec, const Position& pos)
{
    check_position(spec, pos);
    if (is_terminal(pos)) throw DomainError("the terminal position has no moves");
    const auto it = std::max_element(pos.heights().begin(), pos.heights().end());
    const int idx = static_cast<int>(it - pos.heights().begin());
    const int one[] = {idx};
    auto set = first_set_containing(spec, one);
    Move m;
    m.set_index = *set;
    m.removals.assign(pos.size(), 0);
    m.removals[static_cast<std::size_t>(idx)] = 1;
    return m;
}

}  // namespace nnim
