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

#include "nnim/play.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "nnim/characterizations.hpp"
#include "nnim/oracle.hpp"
#include "nnim/strategy.hpp"

namespace nnim {

const char* to_string(Player p) { return p == Player::Human ? "human" : "engine"; }

Player player_from_string(const std::string& s)
{
    if (s == "human") return Player::Human;
    if (s == "engine") return Player::Engine;
    throw ParameterError("player must be \"human\" or \"engine\", got \"" + s + "\"");
}

namespace {

Player other(Player p) { return p == Player::Human ? Player::Engine : Player::Human; }

void play(GameSession& s, Player mover, const Move& move)
{
    s.position = apply_move(s.spec, s.position, move);
    s.history.push_back({mover, move});
    if (is_terminal(s.position)) {
        s.status = GameStatus::Won;
        s.winner = mover;
    } else {
        s.to_move = other(mover);
    }
}

void require_ongoing(const GameSession& s)
{
    if (s.status != GameStatus::Ongoing)
        throw PlayError(409, "game_over", std::string("game is over, ") + to_string(*s.winner) + " won");
}

json outcome_report(const GameSpec& spec, const Position& pos, Oracle& oracle)
{
    json j;
    if (auto cf = closed_form(spec, pos)) {
        j["outcome"] = cf->holds ? "P" : "N";
        j["source"] = "closed_form";
        j["predicate"] = report_to_json(*cf);
    } else {
        j["outcome"] = to_string(oracle.classify(spec, pos));
        j["source"] = "oracle";
    }
    const ClosedFormCoverage cov = closed_form_coverage(spec);
    if (cov.kind == ClosedFormKind::SEll) {
        j.update(derived_to_json(derived_quantities(spec, pos)));
    } else if (cov.kind == ClosedFormKind::Anchor) {
        auto nk = necklace_params(spec);
        Position reduced = anchor_reduce(nk->first, cov.anchor_half, pos);
        GameSpec anchor = build_spec(Family::necklace(2 * cov.anchor_half + 1, cov.anchor_half + 1));
        json a = derived_to_json(derived_quantities(anchor, reduced));
        a["game"] = game_to_json(anchor, reduced);
        j["anchor"] = std::move(a);
    }
    return j;
}

}  // namespace

json session_to_json(const GameSession& s)
{
    json history = json::array();
    for (const auto& h : s.history) history.push_back(json{{"mover", to_string(h.mover)}, {"move", move_to_json(h.move)}});
    json sets = json::array();
    for (const auto& set : s.spec.move_sets()) {
        json one = json::array();
        for (int v : set) one.push_back(v + 1);
        sets.push_back(std::move(one));
    }
    return json{{"id", s.id},
                {"game", game_to_json(s.spec, s.position)},
                {"initial", s.initial.heights()},
                {"move_sets", std::move(sets)},
                {"history", std::move(history)},
                {"to_move", to_string(s.to_move)},
                {"status", s.status == GameStatus::Ongoing ? "ongoing" : "won"},
                {"winner", s.winner ? json(to_string(*s.winner)) : json(nullptr)}};
}

GameSession session_from_json(const json& j)
{
    GameSession s;
    s.id = j.at("id").get<std::string>();
    s.spec = spec_from_json(j.at("game"));
    s.initial = position_from_json(j.at("initial"));
    check_position(s.spec, s.initial);
    s.position = s.initial;
    const auto& history = j.at("history");
    if (history.empty()) {
        s.to_move = player_from_string(j.at("to_move").get<std::string>());
    } else {
        s.to_move = player_from_string(history.front().at("mover").get<std::string>());
    }
    for (const auto& h : history) {
        const Player mover = player_from_string(h.at("mover").get<std::string>());
        if (s.status != GameStatus::Ongoing || mover != s.to_move)
            throw ParameterError("history is out of turn order");
        play(s, mover, move_from_json(h.at("move")));
    }
    if (s.position != position_from_json(j.at("game")))
        throw ParameterError("history does not reproduce the recorded position");
    return s;
}

PlayService::PlayService(std::shared_ptr<Oracle> oracle, std::optional<std::filesystem::path> snapshot_dir)
    : oracle_(oracle ? std::move(oracle) : std::make_shared<Oracle>()),
      snapshot_dir_(std::move(snapshot_dir)),
      id_state_(std::random_device{}())
{
    if (snapshot_dir_) std::filesystem::create_directories(*snapshot_dir_);
}

PlayService::~PlayService() = default;

std::string PlayService::fresh_id()
{
    std::lock_guard lock(id_mutex_);
    std::mt19937_64 rng(id_state_);
    id_state_ = rng();
    std::ostringstream out;
    out << std::hex << rng();
    return out.str();
}

void PlayService::persist(const GameSession& s) const
{
    if (!snapshot_dir_) return;
    const auto path = *snapshot_dir_ / (s.id + ".json");
    const auto tmp = *snapshot_dir_ / (s.id + ".json.tmp");
    {
        std::ofstream out(tmp);
        out << session_to_json(s).dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

std::shared_ptr<PlayService::Slot> PlayService::find(const std::string& id)
{
    {
        std::shared_lock lock(map_mutex_);
        if (auto it = sessions_.find(id); it != sessions_.end()) return it->second;
    }
    if (snapshot_dir_) {
        bool plain = !id.empty();
        for (char ch : id) plain = plain && std::isalnum(static_cast<unsigned char>(ch));
        const auto path = *snapshot_dir_ / (id + ".json");
        if (plain && std::filesystem::exists(path)) {
            std::ifstream in(path);
            auto slot = std::make_shared<Slot>();
            slot->session = session_from_json(json::parse(in));
            std::unique_lock lock(map_mutex_);
            return sessions_.try_emplace(id, std::move(slot)).first->second;
        }
    }
    throw PlayError(404, "not_found", "no game with id " + id);
}

std::size_t PlayService::session_count() const
{
    std::shared_lock lock(map_mutex_);
    return sessions_.size();
}

GameSession PlayService::create(const json& request)
{
    GameSession s;
    try {
        s.spec = spec_from_json(request);
        s.initial = position_from_json(request);
        check_position(s.spec, s.initial);
        if (request.contains("first")) s.to_move = player_from_string(request.at("first").get<std::string>());
    } catch (const json::exception& e) {
        throw PlayError(400, "bad_request", e.what());
    } catch (const std::invalid_argument& e) {
        throw PlayError(400, "bad_request", e.what());
    } catch (const DomainError& e) {
        throw PlayError(400, "bad_request", e.what());
    }
    if (is_terminal(s.initial)) throw PlayError(400, "terminal_start", "the starting position has no moves");
    s.position = s.initial;

    auto slot = std::make_shared<Slot>();
    std::unique_lock lock(map_mutex_);
    do s.id = fresh_id();
    while (sessions_.count(s.id) != 0);
    slot->session = s;
    sessions_.emplace(s.id, slot);
    lock.unlock();
    persist(s);
    return s;
}

GameSession PlayService::get(const std::string& id)
{
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    return slot->session;
}

GameSession PlayService::human_move(const std::string& id, const json& body)
{
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    GameSession& s = slot->session;
    require_ongoing(s);
    if (s.to_move != Player::Human) throw PlayError(409, "wrong_turn", "it is the engine's turn");
    Move move;
    try {
        move = move_from_json(body.contains("move") ? body.at("move") : body);
        check_move(s.spec, s.position, move);
    } catch (const json::exception& e) {
        throw PlayError(400, "bad_request", e.what());
    } catch (const LegalityError& e) {
        throw PlayError(400, "illegal_move", e.what());
    } catch (const ParameterError& e) {
        throw PlayError(400, "bad_request", e.what());
    }
    play(s, Player::Human, move);
    persist(s);
    return s;
}

EngineReply PlayService::engine_move(const std::string& id)
{
    auto slot = find(id);
    std::lock_guard lock(slot->mutex);
    GameSession& s = slot->session;
    require_ongoing(s);
    if (s.to_move != Player::Engine) throw PlayError(409, "wrong_turn", "it is the human's turn");
    EngineReply reply;
    try {
        if (auto w = winning_move(s.spec, s.position, oracle_.get())) {
            reply.move = w->move;
            reply.winning = true;
            reply.route = w->route;
        } else {
            reply.move = stalling_move(s.spec, s.position);
            reply.route = "stalling";
        }
    } catch (const BudgetExceeded& e) {
        throw PlayError(503, "budget_exceeded", e.what());
    }
    play(s, Player::Engine, reply.move);
    persist(s);
    reply.session = s;
    return reply;
}

json PlayService::analysis(const std::string& id)
{
    GameSession s = get(id);
    try {
        json j = outcome_report(s.spec, s.position, *oracle_);
        j["game"] = game_to_json(s.spec, s.position);
        j["status"] = s.status == GameStatus::Ongoing ? "ongoing" : "won";
        return j;
    } catch (const BudgetExceeded& e) {
        throw PlayError(503, "budget_exceeded", e.what());
    }
}

json PlayService::hint(const std::string& id)
{
    GameSession s = get(id);
    require_ongoing(s);
    try {
        if (auto w = winning_move(s.spec, s.position, oracle_.get())) {
            json j = strategy_to_json(*w);
            j["winning"] = true;
            return j;
        }
    } catch (const BudgetExceeded& e) {
        throw PlayError(503, "budget_exceeded", e.what());
    }
    return json{{"winning", false}, {"move", nullptr}, {"message", "no winning move exists"}};
}

}  // namespace nnim
