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

#include "nnim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>

#include "nnim/characterizations.hpp"
#include "nnim/http_server.hpp"
#include "nnim/json_io.hpp"
#include "nnim/oracle.hpp"
#include "nnim/play.hpp"
#include "nnim/reductions.hpp"
#include "nnim/strategy.hpp"

namespace nnim::cli {

namespace {

struct GameOptions {
    std::string family = "NN";
    int n = 0;
    int k = 0;
    int c = 0;
    std::string sets;
    std::string game_file;
    std::string pos;
};

void add_game_options(CLI::App* cmd, GameOptions& g, bool with_pos)
{
    cmd->add_option("--family", g.family, "NN, NNG, PN, CN, NIM, MOORE or SET")->capture_default_str();
    cmd->add_option("--n", g.n, "number of stacks");
    cmd->add_option("--k", g.k, "window size");
    cmd->add_option("--c", g.c, "clasp size for NNG");
    cmd->add_option("--sets", g.sets, "SET move sets, e.g. \"1,2;2,3;4\" (1-based)");
    cmd->add_option("--game", g.game_file, "JSON file with a game descriptor (and heights)");
    if (with_pos) cmd->add_option("--pos", g.pos, "heights as a comma list or a JSON file");
}

Height parse_height(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    Height v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ParameterError("not an integer: '" + std::string(s) + "'");
    return v;
}

std::vector<int> parse_ints(const std::string& text)
{
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(static_cast<int>(parse_height(std::string_view(text).substr(start, comma - start))));
        start = comma + 1;
    }
    return out;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParameterError(path + ": " + e.what());
    }
}

GameSpec make_spec(const GameOptions& g)
{
    if (!g.game_file.empty()) return spec_from_json(read_json_file(g.game_file));
    if (g.n <= 0) throw ParameterError("--n is required");
    const FamilyKind kind = family_kind_from_code(g.family);
    if (kind == FamilyKind::Generic) {
        if (g.sets.empty()) throw ParameterError("SET games need --sets");
        std::vector<std::vector<int>> sets;
        std::size_t start = 0;
        while (start <= g.sets.size()) {
            auto semi = g.sets.find(';', start);
            if (semi == std::string::npos) semi = g.sets.size();
            sets.push_back(parse_ints(g.sets.substr(start, semi - start)));
            start = semi + 1;
        }
        return generic_spec(g.n, sets);
    }
    return build_spec(make_family(g.family, g.n, g.k, g.c));
}

Position make_position(const GameOptions& g, const GameSpec& spec)
{
    Position pos;
    if (!g.pos.empty()) {
        if (std::filesystem::exists(g.pos)) {
            pos = position_from_json(read_json_file(g.pos));
        } else {
            std::vector<Height> h;
            std::size_t start = 0;
            while (start <= g.pos.size()) {
                auto comma = g.pos.find(',', start);
                if (comma == std::string::npos) comma = g.pos.size();
                h.push_back(parse_height(std::string_view(g.pos).substr(start, comma - start)));
                start = comma + 1;
            }
            pos = Position(std::move(h));
        }
    } else if (!g.game_file.empty()) {
        pos = position_from_json(read_json_file(g.game_file));
    } else {
        throw ParameterError("--pos is required");
    }
    check_position(spec, pos);
    return pos;
}

std::string condition_summary(const DerivedQuantities& q)
{
    std::string se = q.A == q.B ? "SE ok" : "SE: A=" + std::to_string(q.A) + ", B=" + std::to_string(q.B);
    std::string me = q.m == q.s_star ? "ME ok"
                                     : "ME: m=" + std::to_string(q.m) + ", s*=" + std::to_string(q.s_star);
    return se + ", " + me;
}

std::string classify_line(const GameSpec& spec, const Position& pos, const PredicateReport& r)
{
    const ClosedFormCoverage cov = closed_form_coverage(spec);
    std::string detail;
    if (cov.kind == ClosedFormKind::SEll) {
        detail = condition_summary(derived_quantities(spec, pos));
    } else if (cov.kind == ClosedFormKind::Anchor) {
        const int l = cov.anchor_half;
        GameSpec anchor = build_spec(Family::necklace(2 * l + 1, l + 1));
        detail = condition_summary(derived_quantities(anchor, anchor_reduce(spec.size(), l, pos)));
    } else if (r.witness) {
        detail = *r.witness;
    } else {
        detail = "holds";
    }
    return std::string(r.holds ? "P" : "N") + " (" + r.predicate + ": " + detail + ")";
}

using Predicate = std::function<bool(const Position&)>;

Predicate select_predicate(const GameSpec& spec, const std::string& name)
{
    Predicate p;
    if (name == "auto") {
        if (closed_form_coverage(spec).kind == ClosedFormKind::None)
            throw ParameterError(spec.family().to_string() + " has no closed form");
        p = [&spec](const Position& x) { return closed_form(spec, x)->holds; };
    } else if (name == "S_ell") {
        p = [&spec](const Position& x) { return in_S_ell(spec, x).holds; };
    } else if (name == "nn_n_minus_1") {
        p = [&spec](const Position& x) { return p_nn_n_minus_1(spec, x); };
    } else if (name == "nn_n_minus_2") {
        p = [&spec](const Position& x) { return p_nn_n_minus_2(spec, x); };
    } else if (name == "path") {
        p = [&spec](const Position& x) { return p_path(spec, x); };
    } else if (name == "cn_small") {
        p = [&spec](const Position& x) { return p_cn_small(spec, x); };
    } else {
        throw ParameterError("unknown predicate '" + name + "'");
    }
    try {
        p(Position(std::vector<Height>(static_cast<std::size_t>(spec.size()), 0)));
    } catch (const DomainError& e) {
        throw ParameterError(std::string("predicate not applicable: ") + e.what());
    }
    return p;
}

char coverage_cell(int n, int k)
{
    GameSpec spec;
    try {
        spec = build_spec(Family::necklace(n, k));
    } catch (const ParameterError&) {
        return ' ';
    }
    switch (closed_form_coverage(spec).kind) {
    case ClosedFormKind::SEll: return 'S';
    case ClosedFormKind::Anchor: return 'A';
    case ClosedFormKind::SingleSet: return 'T';
    default: return '.';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"NecklaceNim and SetNim engine", "nnim"};
    app.require_subcommand(1);
    unsigned workers = 1;

    GameOptions g;
    bool force_oracle = false;
    bool as_json = false;
    bool show_trace = false;
    Height cap = 0;
    std::string predicate = "auto";
    std::string report_path;
    std::uint64_t sample = 0;
    std::uint64_t seed = 1;
    std::string alg;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string snapshots;
    int max_n = 12;

    auto* classify = app.add_subcommand("classify", "P/N outcome of a position");
    add_game_options(classify, g, true);
    classify->add_flag("--oracle", force_oracle, "force exhaustive search");
    classify->add_flag("--json", as_json, "JSON output");

    auto* move = app.add_subcommand("move", "winning move from an N-position");
    add_game_options(move, g, true);
    move->add_flag("--trace", show_trace, "print algorithm tables");
    move->add_flag("--json", as_json, "JSON output");

    auto* enumerate = app.add_subcommand("enumerate", "P-positions with all heights <= cap");
    add_game_options(enumerate, g, false);
    enumerate->add_option("--cap", cap, "height cap")->required();
    enumerate->add_option("--workers", workers, "worker threads")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "closed form against exhaustive search");
    add_game_options(verify, g, false);
    verify->add_option("--cap", cap, "height cap")->required();
    verify->add_option("--workers", workers, "worker threads")->capture_default_str();
    verify->add_option("--predicate", predicate, "auto, S_ell, nn_n_minus_1, nn_n_minus_2, path, cn_small")
        ->capture_default_str();
    verify->add_option("--report", report_path, "write disagreements as JSON lines to this file");
    verify->add_option("--sample", sample, "check this many random positions instead of the full box");
    verify->add_option("--seed", seed, "seed for --sample")->capture_default_str();

    auto* reduce = app.add_subcommand("reduce", "reduction pipeline for a position");
    add_game_options(reduce, g, true);

    auto* trace = app.add_subcommand("trace", "algorithm tables");
    add_game_options(trace, g, true);
    trace->add_option("--alg", alg, "two-delta, delta-alg, small-delta, unit-adjust or strategy")->required();
    trace->add_flag("--json", as_json, "JSON output");

    auto* coverage = app.add_subcommand("coverage", "solved NN(n,k) games");
    coverage->add_option("--max-n", max_n, "largest n")->capture_default_str();

    auto* serve = app.add_subcommand("serve", "HTTP play API");
    serve->add_option("--host", host)->capture_default_str();
    serve->add_option("--port", port)->capture_default_str();
    serve->add_option("--snapshots", snapshots, "directory for session snapshots");

    std::vector<const char*> argv{"nnim"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (workers == 0) workers = 1;

    try {
        if (*classify) {
            GameSpec spec = make_spec(g);
            Position pos = make_position(g, spec);
            auto cf = force_oracle ? std::nullopt : closed_form(spec, pos);
            if (cf) {
                if (as_json) {
                    json j = report_to_json(*cf);
                    j["outcome"] = cf->holds ? "P" : "N";
                    out << j.dump() << '\n';
                } else {
                    out << classify_line(spec, pos, *cf) << '\n';
                }
            } else {
                Oracle oracle;
                const Outcome o = oracle.classify(spec, pos);
                if (as_json)
                    out << json{{"outcome", to_string(o)}, {"source", "oracle"}}.dump() << '\n';
                else
                    out << to_string(o) << " (oracle)\n";
            }
            return kOk;
        }
        if (*move) {
            GameSpec spec = make_spec(g);
            Position pos = make_position(g, spec);
            Oracle oracle;
            auto w = winning_move(spec, pos, &oracle);
            if (!w) {
                if (as_json)
                    out << json{{"move", nullptr}, {"message", "no winning move exists"}}.dump() << '\n';
                else
                    out << "no winning move exists (P-position)\n";
                return kOk;
            }
            if (as_json) {
                out << strategy_to_json(*w).dump() << '\n';
            } else {
                out << move_to_json(w->move).dump() << '\n';
                if (show_trace) {
                    out << "route: " << w->route << (w->mirrored ? " (mirrored)" : "") << '\n';
                    for (const auto& t : w->traces) out << render_trace(t);
                    out << "result: " << w->target.to_string() << '\n';
                }
            }
            return kOk;
        }
        if (*enumerate) {
            GameSpec spec = make_spec(g);
            Oracle oracle;
            auto ps = oracle.enumerate_p_positions(spec, cap, workers);
            for (const auto& p : ps) out << json{{"pos", p.heights()}, {"outcome", "P"}}.dump() << '\n';
            err << ps.size() << " P-positions\n";
            return kOk;
        }
        if (*verify) {
            GameSpec spec = make_spec(g);
            Predicate pred = select_predicate(spec, predicate);
            std::ofstream report_file;
            std::ostream* report = &out;
            if (!report_path.empty()) {
                report_file.open(report_path);
                if (!report_file) throw ParameterError("cannot write " + report_path);
                report = &report_file;
            }
            Oracle oracle;
            std::uint64_t count = 0;
            std::uint64_t bad = 0;
            auto check = [&](const Position& p, Outcome o) {
                ++count;
                const bool says_p = pred(p);
                if (says_p != (o == Outcome::P)) {
                    ++bad;
                    *report << json{{"pos", p.heights()}, {"oracle", to_string(o)}, {"predicate", says_p ? "P" : "N"}}
                                   .dump()
                            << '\n';
                }
            };
            if (sample > 0) {
                std::mt19937_64 rng(seed);
                std::uniform_int_distribution<Height> dist(0, cap);
                for (std::uint64_t i = 0; i < sample; ++i) {
                    std::vector<Height> h(static_cast<std::size_t>(spec.size()));
                    for (auto& x : h) x = dist(rng);
                    Position p(std::move(h));
                    check(p, oracle.classify(spec, p));
                }
            } else {
                auto table = oracle.solve_box(spec, std::vector<Height>(static_cast<std::size_t>(spec.size()), cap),
                                              workers);
                table->for_each(check);
            }
            out << count << " positions, " << bad << " disagreements\n";
            return bad == 0 ? kOk : kDisagreement;
        }
        if (*reduce) {
            GameSpec spec = make_spec(g);
            Position pos = make_position(g, spec);
            json j = pipeline_to_json(spec, pos, reduce_pipeline(spec, pos));
            if (closed_form_coverage(spec).kind == ClosedFormKind::SEll) {
                Reduced inv = invariance_reduce(spec, pos);
                json s = step_to_json(inv.step);
                s["result"] = inv.pos.heights();
                j["invariance"] = std::move(s);
            }
            out << j.dump(2) << '\n';
            return kOk;
        }
        if (*trace) {
            GameSpec spec = make_spec(g);
            Position pos = make_position(g, spec);
            auto nk = necklace_params(spec);
            const bool even_anchor = nk && nk->first % 2 == 0 && nk->first >= 4 && nk->second == nk->first / 2;
            if (alg != "strategy" && !even_anchor)
                throw ParameterError("--alg " + alg + " needs an NN(2l,l) game");
            std::vector<AlgorithmTrace> traces;
            std::optional<Position> result;
            std::string extra;
            if (alg == "two-delta") {
                auto r = two_delta(pos);
                traces.push_back(r.trace);
                result = r.r;
                extra = "Delta=" + std::to_string(r.Delta) + ", delta=" + std::to_string(r.delta);
            } else if (alg == "delta-alg") {
                auto r = delta_alg(pos);
                traces.push_back(r.trace);
                result = r.r;
            } else if (alg == "small-delta" || alg == "unit-adjust") {
                auto r = small_delta(pos);
                traces.push_back(r.trace);
                result = r.r;
                extra = "x=" + std::to_string(r.x) + ", y=" + std::to_string(r.y) + ", delta=" + std::to_string(r.delta);
                if (alg == "unit-adjust") result = unit_adjust(r.r, r.x, r.y);
            } else if (alg == "strategy") {
                Oracle oracle;
                auto w = winning_move(spec, pos, &oracle);
                if (w) {
                    traces = w->traces;
                    result = w->target;
                    extra = "route: " + w->route;
                }
            } else {
                throw ParameterError("unknown algorithm '" + alg + "'");
            }
            if (as_json) {
                json ts = json::array();
                for (const auto& t : traces) ts.push_back(trace_to_json(t));
                out << json{{"traces", ts}, {"result", result ? json(result->heights()) : json(nullptr)}}.dump()
                    << '\n';
            } else {
                for (const auto& t : traces) out << render_trace(t);
                if (!extra.empty()) out << extra << '\n';
                out << "result: " << (result ? result->to_string() : std::string("none (P-position)")) << '\n';
            }
            return kOk;
        }
        if (*coverage) {
            out << "NN(n,k) closed forms: S = S_ell, A = anchor reduction, T = single move set, . = open\n";
            out << " n\\k";
            for (int k = 1; k <= max_n; ++k) out << (k < 10 ? "  " : " ") << k;
            out << '\n';
            for (int n = 2; n <= max_n; ++n) {
                out << (n < 10 ? "  " : " ") << n << ' ';
                for (int k = 1; k <= n; ++k) out << "  " << coverage_cell(n, k);
                out << '\n';
            }
            return kOk;
        }
        if (*serve) {
            std::optional<std::filesystem::path> dir;
            if (!snapshots.empty()) dir = snapshots;
            PlayService service(std::make_shared<Oracle>(), dir);
            HttpServer server(service);
            const int bound = server.bind(host, port);
            if (bound < 0) throw ParameterError("cannot bind " + host + ":" + std::to_string(port));
            err << "listening on http://" << host << ':' << bound << '\n';
            server.serve();
            return kOk;
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kBudget;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const LegalityError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace nnim::cli
