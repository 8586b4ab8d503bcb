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

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nnim/json_io.hpp"
#include "nnim/setnim.hpp"

namespace nnim {

class Oracle;

enum class Player { Human, Engine };
enum class GameStatus { Ongoing, Won };

const char* to_string(Player p);
Player player_from_string(const std::string& s);

struct HistoryEntry {
    Player mover = Player::Human;
    Move move;
};

struct GameSession {
    std::string id;
    GameSpec spec;
    Position initial;
    Position position;
    std::vector<HistoryEntry> history;
    Player to_move = Player::Human;
    GameStatus status = GameStatus::Ongoing;
    std::optional<Player> winner;
};

json session_to_json(const GameSession& s);
/// Rebuilds a session by replaying its history; throws ParameterError when
/// the replay does not reproduce the recorded position.
GameSession session_from_json(const json& j);

/// Error carrying an HTTP status and a short machine-readable code.
class PlayError : public std::runtime_error {
 public:
    PlayError(int status, std::string code, const std::string& message)
        : std::runtime_error(message), status_(status), code_(std::move(code)) {}
    int status() const { return status_; }
    const std::string& code() const { return code_; }

 private:
    int status_;
    std::string code_;
};

struct EngineReply {
    GameSession session;
    Move move;
    bool winning = false;
    std::string route;
};

/// In-memory game sessions. Calls on different sessions run concurrently,
/// calls on one session are serialized.
class PlayService {
 public:
    explicit PlayService(std::shared_ptr<Oracle> oracle = nullptr,
                         std::optional<std::filesystem::path> snapshot_dir = std::nullopt);
    ~PlayService();

    /// Body: game descriptor with "heights", plus optional "first" ("human" | "engine").
    GameSession create(const json& request);
    GameSession get(const std::string& id);
    GameSession human_move(const std::string& id, const json& move);
    EngineReply engine_move(const std::string& id);
    json analysis(const std::string& id);
    json hint(const std::string& id);

    std::size_t session_count() const;

 private:
    struct Slot {
        std::mutex mutex;
        GameSession session;
    };

    std::shared_ptr<Slot> find(const std::string& id);
    std::string fresh_id();
    void persist(const GameSession& s) const;

    std::shared_ptr<Oracle> oracle_;
    std::optional<std::filesystem::path> snapshot_dir_;
    mutable std::shared_mutex map_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Slot>> sessions_;
    std::mutex id_mutex_;
    std::uint64_t id_state_;
};

}  // namespace nnim
