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

#include "nnim/http_server.hpp"

#include <httplib.h>

#include "nnim/play.hpp"

namespace nnim {

namespace {

void send_json(httplib::Response& res, int status, const json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message)
{
    send_json(res, status, json{{"error", {{"code", code}, {"message", message}}}});
}

template <class F>
void guarded(httplib::Response& res, F&& body)
{
    try {
        body();
    } catch (const PlayError& e) {
        send_error(res, e.status(), e.code(), e.what());
    } catch (const json::exception& e) {
        send_error(res, 400, "bad_request", e.what());
    } catch (const BudgetExceeded& e) {
        send_error(res, 503, "budget_exceeded", e.what());
    } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
    }
}

json parse_body(const httplib::Request& req)
{
    if (req.body.empty()) return json::object();
    try {
        return json::parse(req.body);
    } catch (const json::parse_error& e) {
        throw PlayError(400, "bad_request", std::string("malformed JSON: ") + e.what());
    }
}

}  // namespace

void install_routes(httplib::Server& server, PlayService& service)
{
    server.Post("/games", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 201, session_to_json(service.create(parse_body(req)))); });
    });
    server.Get(R"(/games/([A-Za-z0-9]+))", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, session_to_json(service.get(req.matches[1]))); });
    });
    server.Post(R"(/games/([A-Za-z0-9]+)/moves)", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, session_to_json(service.human_move(req.matches[1], parse_body(req)))); });
    });
    server.Post(R"(/games/([A-Za-z0-9]+)/engine-move)",
                [&service](const httplib::Request& req, httplib::Response& res) {
                    guarded(res, [&] {
                        EngineReply r = service.engine_move(req.matches[1]);
                        json body{{"game", session_to_json(r.session)},
                                  {"move", move_to_json(r.move)},
                                  {"winning", r.winning},
                                  {"route", r.route}};
                        if (!r.winning) body["message"] = "no winning move exists";
                        send_json(res, 200, body);
                    });
                });
    server.Get(R"(/games/([A-Za-z0-9]+)/analysis)", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, service.analysis(req.matches[1])); });
    });
    server.Get(R"(/games/([A-Za-z0-9]+)/hint)", [&service](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, service.hint(req.matches[1])); });
    });
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    server.Options(R"(/games.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) send_error(res, res.status, res.status == 404 ? "not_found" : "error", "no such route");
    });
}

HttpServer::HttpServer(PlayService& service) : server_(std::make_unique<httplib::Server>())
{
    install_routes(*server_, service);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0) return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return server_->listen_after_bind(); }

void HttpServer::stop() { server_->stop(); }

}  // namespace nnim
