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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nnim/cli.hpp"
#include "nnim/json_io.hpp"

using namespace nnim;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("classify") {
    auto r = run({"classify", "--family", "NN", "--n", "10", "--k", "5", "--pos", "4,20,0,0,0,4,2,7,6,5"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).at(0) == "P (S_ell: SE ok, ME ok)");

    auto n = run({"classify", "--n", "10", "--k", "5", "--pos", "4,21,3,2,3,4,2,7,6,5"});
    CHECK(lines(n.out).at(0) == "N (S_ell: SE: A=33, B=24, ME: m=4, s*=11)");

    auto o = run({"classify", "--n", "3", "--k", "2", "--pos", "2,2,2", "--oracle"});
    CHECK(lines(o.out).at(0) == "P (oracle)");

    auto j = run({"classify", "--n", "3", "--k", "2", "--pos", "1,0,1", "--json"});
    CHECK(json::parse(j.out)["outcome"] == "N");
}

TEST_CASE("verify") {
    auto r = run({"verify", "--family", "NN", "--n", "4", "--k", "2", "--cap", "6"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).back() == "2401 positions, 0 disagreements");

    auto p = run({"verify", "--n", "5", "--k", "4", "--cap", "3", "--predicate", "nn_n_minus_1", "--workers", "2"});
    CHECK(p.code == 0);
    CHECK(lines(p.out).back() == "1024 positions, 0 disagreements");

    auto again = run({"verify", "--n", "5", "--k", "4", "--cap", "3", "--predicate", "nn_n_minus_1", "--workers", "2"});
    CHECK(again.out == p.out);

    auto s = run({"verify", "--n", "8", "--k", "4", "--cap", "4", "--sample", "50", "--seed", "9"});
    CHECK(s.code == 0);
    CHECK(lines(s.out).back() == "50 positions, 0 disagreements");
}

TEST_CASE("trace") {
    auto r = run({"trace", "--alg", "two-delta", "--family", "NN", "--n", "10", "--k", "5", "--pos",
                  "4,21,3,2,3,4,2,7,6,5"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() >= 6);
    CHECK(ls[0] == "two-delta");
    CHECK(ls[1] == "j | Delta | m_2 | m_3 | m_4 | m_5 | m_6 | delta | r");
    CHECK(ls[3] == "5 |     6 |  22 |   5 |   4 |   4 |     |     4 | (4,21,3,2,0,4,2,7,6,5)");
    CHECK(ls[4] == "4 |     4 |  20 |   3 |   2 |     |     |     2 | (4,21,3,0,0,4,2,7,6,5)");
    CHECK(ls[5] == "3 |     1 |  17 |   0 |     |     |     |     0 | (4,21,0,0,0,4,2,7,6,5)");
    CHECK(ls.back() == "result: (4,21,0,0,0,4,2,7,6,5)");

    auto u = run({"trace", "--alg", "strategy", "--n", "10", "--k", "5", "--pos", "2,15,8,4,5,4,5,5,5,8", "--json"});
    CHECK(u.code == 0);
    CHECK_FALSE(u.out.empty());
}

TEST_CASE("move") {
    auto r = run({"move", "--n", "10", "--k", "5", "--pos", "2,15,8,4,5,4,5,5,5,8"});
    CHECK(r.code == 0);
    auto mv = json::parse(lines(r.out).at(0));
    CHECK(mv["set"] == 3);
    CHECK(mv["removals"] == json({0, 0, 5, 4, 5, 4, 3, 0, 0, 0}));

    auto p = run({"move", "--n", "10", "--k", "5", "--pos", "4,20,0,0,0,4,2,7,6,5"});
    CHECK(p.code == 0);
    CHECK(p.out.find("no winning move exists") != std::string::npos);
}

TEST_CASE("enumerate output round-trips through classify") {
    auto r = run({"enumerate", "--n", "5", "--k", "3", "--cap", "2"});
    CHECK(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE_FALSE(ls.empty());
    auto file = std::filesystem::temp_directory_path() / "nnim-cli-pos.json";
    for (std::size_t i = 0; i < ls.size(); i += 3) {
        auto row = json::parse(ls[i]);
        std::ofstream(file) << row.dump();
        auto c = run({"classify", "--n", "5", "--k", "3", "--pos", file.string(), "--json"});
        CHECK(c.code == 0);
        CHECK(json::parse(c.out)["outcome"] == row["outcome"]);
    }
    std::filesystem::remove(file);
}

TEST_CASE("reduce and coverage") {
    auto r = run({"reduce", "--n", "8", "--k", "4", "--pos", "3,0,0,0,2,2,2,1"});
    CHECK(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j.contains("steps"));

    auto c = run({"coverage", "--max-n", "8"});
    CHECK(c.code == 0);
    CHECK(c.out.find('S') != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"bogus"}).code == cli::kUsage);
    CHECK(run({"classify", "--n", "4", "--k", "9", "--pos", "1,1,1,1"}).code == cli::kUsage);
    CHECK(run({"classify", "--n", "4", "--k", "2", "--pos", "1,1,1"}).code == cli::kUsage);
    CHECK(run({"verify", "--n", "6", "--k", "3", "--cap", "2", "--predicate", "path"}).code == cli::kUsage);
    CHECK(run({"verify", "--n", "7", "--k", "3", "--cap", "2"}).code == cli::kUsage);

    setenv("NN_BUDGET", "10", 1);
    auto b = run({"classify", "--n", "7", "--k", "3", "--pos", "5,5,5,5,5,5,5"});
    unsetenv("NN_BUDGET");
    CHECK(b.code == cli::kBudget);
}
