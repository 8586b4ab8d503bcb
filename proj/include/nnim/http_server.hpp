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

#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace nnim {

class PlayService;

/// Registers the /games routes on `server`.
void install_routes(httplib::Server& server, PlayService& service);

/// HTTP front end for a PlayService.
class HttpServer {
 public:
    explicit HttpServer(PlayService& service);
    ~HttpServer();

    /// Binds to host:port (port 0 picks a free one); returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Blocks serving requests until stop().
    bool serve();
    void stop();

 private:
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace nnim
