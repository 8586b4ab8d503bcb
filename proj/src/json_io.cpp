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

#include "nnim/json_io.hpp"

namespace nnim {

namespace {

int get_int(const json& j, const char* key)
{
    if (!j.contains(key)) throw ParameterError(std::string("missing field \"") + key + "\"");
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ParameterError(std::string("field \"") + key + "\" must be an integer");
    return v.get<int>();
}

json sets_to_json(const GameSpec& spec)
{
    json out = json::array();
    for (const auto& s : spec.move_sets()) {
        json set = json::array();
        for (int v : s) set.push_back(v + 1);
        out.push_back(std::move(set));
    }
    return out;
}

}  // namespace

Family make_family(const std::string& code, int n, int k, int c)
{
    switch (family_kind_from_code(code)) {
    case FamilyKind::Generic: return Family::generic(n);
    case FamilyKind::Nim: return Family::nim(n);
    case FamilyKind::Moore: return Family::moore(n, k);
    case FamilyKind::Circular: return Family::circular(n, k);
    case FamilyKind::Path: return Family::path(n, k);
    case FamilyKind::Necklace: return Family::necklace(n, k);
    case FamilyKind::Clasp: return Family::clasp(n, k, c);
    }
    throw ParameterError("unknown family code '" + code + "'");
}

json spec_to_json(const GameSpec& spec)
{
    const Family& f = spec.family();
    json j;
    j["family"] = f.code();
    j["n"] = spec.size();
    switch (f.kind) {
    case FamilyKind::Generic: j["move_sets"] = sets_to_json(spec); break;
    case FamilyKind::Nim: break;
    case FamilyKind::Clasp:
        j["k"] = f.k;
        j["c"] = f.c;
        break;
    default: j["k"] = f.k; break;
    }
    if (spec.height_cap() != kDefaultHeightCap) j["cap"] = spec.height_cap();
    return j;
}

GameSpec spec_from_json(const json& j)
{
    if (!j.is_object()) throw ParameterError("game descriptor must be a JSON object");
    if (!j.contains("family") || !j.at("family").is_string()) throw ParameterError("missing field \"family\"");
    const std::string code = j.at("family").get<std::string>();
    const FamilyKind kind = family_kind_from_code(code);
    Height cap = kDefaultHeightCap;
    if (j.contains("cap")) {
        if (!j.at("cap").is_number_integer()) throw ParameterError("field \"cap\" must be an integer");
        cap = j.at("cap").get<Height>();
    }
    if (kind == FamilyKind::Generic) {
        if (!j.contains("move_sets") || !j.at("move_sets").is_array())
            throw ParameterError("SET games need a \"move_sets\" array");
        std::vector<std::vector<int>> sets;
        for (const auto& s : j.at("move_sets")) {
            if (!s.is_array()) throw ParameterError("each move set must be an array of stack numbers");
            std::vector<int> one;
            for (const auto& v : s) {
                if (!v.is_number_integer()) throw ParameterError("stack numbers must be integers");
                one.push_back(v.get<int>());
            }
            sets.push_back(std::move(one));
        }
        return generic_spec(get_int(j, "n"), sets).with_height_cap(cap);
    }
    const int n = get_int(j, "n");
    const int k = kind == FamilyKind::Nim ? 0 : get_int(j, "k");
    const int c = kind == FamilyKind::Clasp ? get_int(j, "c") : 0;
    return build_spec(make_family(code, n, k, c)).with_height_cap(cap);
}

json heights_to_json(const Position& pos) { return json(pos.heights()); }

json game_to_json(const GameSpec& spec, const Position& pos)
{
    json j = spec_to_json(spec);
    j["heights"] = heights_to_json(pos);
    return j;
}

Position position_from_json(const json& j)
{
    static const json none;
    const json* h = &j;
    if (j.is_object()) h = j.contains("heights") ? &j.at("heights") : j.contains("pos") ? &j.at("pos") : &none;
    if (!h->is_array()) throw ParameterError("heights must be an array of integers");
    std::vector<Height> out;
    for (const auto& v : *h) {
        if (!v.is_number_integer()) throw ParameterError("heights must be integers");
        out.push_back(v.get<Height>());
    }
    return Position(std::move(out));
}

json move_to_json(const Move& move)
{
    return json{{"set", move.set_index + 1}, {"removals", move.removals}};
}

Move move_from_json(const json& j)
{
    if (!j.is_object()) throw ParameterError("move must be a JSON object");
    const int set = get_int(j, "set");
    if (set < 1) throw LegalityError("move set numbers start at 1");
    if (!j.contains("removals") || !j.at("removals").is_array())
        throw ParameterError("move needs a \"removals\" array");
    Move m;
    m.set_index = static_cast<std::size_t>(set - 1);
    for (const auto& v : j.at("removals")) {
        if (!v.is_number_integer()) throw ParameterError("removals must be integers");
        m.removals.push_back(v.get<Height>());
    }
    return m;
}

json report_to_json(const PredicateReport& report)
{
    json j{{"predicate", report.predicate}, {"holds", report.holds}};
    if (report.witness) j["witness"] = *report.witness;
    return j;
}

json derived_to_json(const DerivedQuantities& q)
{
    return json{{"A", q.A},
                {"B", q.B},
                {"m", q.m},
                {"s", q.s},
                {"s_star", q.s_star},
                {"t", q.t},
                {"Delta", q.Delta},
                {"delta", q.delta_me},
                {"SE", q.A == q.B},
                {"ME", q.m == q.s_star}};
}

json trace_to_json(const AlgorithmTrace& trace)
{
    json rows = json::array();
    for (const auto& row : trace.rows) {
        json r;
        r["label"] = row.label;
        if (row.d) r["d"] = *row.d;
        json m = json::object();
        for (std::size_t i = 0; i < row.m.size(); ++i)
            if (row.m[i]) m["m_" + std::to_string(i + 2)] = *row.m[i];
        r["m"] = std::move(m);
        if (row.Delta) r["Delta"] = *row.Delta;
        if (row.delta) r["delta"] = *row.delta;
        if (row.r) r["r"] = row.r->heights();
        rows.push_back(std::move(r));
    }
    return json{{"algorithm", trace.algorithm}, {"l", trace.half}, {"rows", std::move(rows)}};
}

json strategy_to_json(const StrategyMove& move)
{
    json traces = json::array();
    for (const auto& t : move.traces) traces.push_back(trace_to_json(t));
    return json{{"move", move_to_json(move.move)},
                {"target", move.target.heights()},
                {"route", move.route},
                {"mirrored", move.mirrored},
                {"traces", std::move(traces)}};
}

json step_to_json(const ReductionStep& step)
{
    json j;
    j["kind"] = to_string(step.kind);
    json idx = json::array();
    for (int i : step.indices) idx.push_back(i + 1);
    j["stacks"] = std::move(idx);
    json map = json::array();
    for (int i : step.index_map) map.push_back(i < 0 ? json(nullptr) : json(i + 1));
    j["index_map"] = std::move(map);
    j["sets_before"] = step.sets_before;
    j["sets_after"] = step.sets_after;
    if (step.kind == ReductionKind::Invariance) {
        json vs = json::array();
        for (std::size_t i = 0; i < step.vectors.size(); ++i)
            vs.push_back(json{{"label", step.vectors[i].label},
                              {"z", step.vectors[i].bits},
                              {"c", step.coefficients.at(i)}});
        j["vectors"] = std::move(vs);
    }
    if (step.sigma_min) j["sigma_min"] = *step.sigma_min;
    return j;
}

json pipeline_to_json(const GameSpec& original, const Position& pos, const ReductionPipeline& pipeline)
{
    json steps = json::array();
    for (const auto& r : pipeline.steps) {
        json s = step_to_json(r.step);
        s["game"] = game_to_json(r.spec, r.pos);
        steps.push_back(std::move(s));
    }
    json out{{"input", game_to_json(original, pos)}, {"steps", std::move(steps)}};
    if (pipeline.identified) {
        json relabel = json::array();
        for (int v : pipeline.identified->relabel) relabel.push_back(v + 1);
        out["identified"] = json{{"family", pipeline.identified->family.to_string()}, {"relabel", relabel}};
    } else {
        out["identified"] = nullptr;
    }
    return out;
}

}  // namespace nnim
