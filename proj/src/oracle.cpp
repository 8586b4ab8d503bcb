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

#include "nnim/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <thread>

namespace nnim {

namespace {

struct VectorHash {
    std::size_t operator()(const std::vector<Height>& v) const noexcept
    {
        std::uint64_t h = 1469598103934665603ull;
        for (Height x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

constexpr std::size_t kShards = 64;

std::uint64_t parse_count(const std::string& s)
{
    if (s.empty()) throw ParameterError("empty budget value");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        throw ParameterError("budget value '" + s + "' is not a number");
    }
    if (used != s.size()) throw ParameterError("budget value '" + s + "' is not a number");
    return v;
}

}  // namespace

OracleBudget OracleBudget::parse(const std::string& text)
{
    OracleBudget b;
    auto comma = text.find(',');
    b.memo_entries = parse_count(text.substr(0, comma));
    if (comma != std::string::npos) b.options = parse_count(text.substr(comma + 1));
    return b;
}

OracleBudget OracleBudget::from_env()
{
    if (const char* env = std::getenv("NN_BUDGET"); env && *env) return parse(env);
    return {};
}

// OutcomeTable

OutcomeTable::OutcomeTable(std::vector<Height> caps, std::vector<std::uint8_t> outcomes)
    : caps_(std::move(caps)), strides_(caps_.size()), outcomes_(std::move(outcomes))
{
    std::size_t stride = 1;
    for (std::size_t i = caps_.size(); i-- > 0;) {
        strides_[i] = stride;
        stride *= static_cast<std::size_t>(caps_[i] + 1);
    }
}

bool OutcomeTable::covers(const Position& pos) const
{
    if (pos.size() != caps_.size()) return false;
    for (std::size_t i = 0; i < caps_.size(); ++i)
        if (pos[i] > caps_[i]) return false;
    return true;
}

std::size_t OutcomeTable::index(const Position& pos) const
{
    std::size_t idx = 0;
    for (std::size_t i = 0; i < caps_.size(); ++i) idx += static_cast<std::size_t>(pos[i]) * strides_[i];
    return idx;
}

Outcome OutcomeTable::at(const Position& pos) const
{
    if (!covers(pos)) throw DomainError("position " + pos.to_string() + " lies outside the solved box");
    return at_index(index(pos));
}

Position OutcomeTable::position(std::size_t index) const
{
    std::vector<Height> h(caps_.size());
    for (std::size_t i = 0; i < caps_.size(); ++i) {
        h[i] = static_cast<Height>(index / strides_[i]);
        index %= strides_[i];
    }
    return Position(std::move(h));
}

void OutcomeTable::for_each(const std::function<void(const Position&, Outcome)>& fn) const
{
    std::vector<Height> h(caps_.size(), 0);
    for (std::size_t idx = 0; idx < outcomes_.size(); ++idx) {
        fn(Position(h), at_index(idx));
        for (std::size_t i = h.size(); i-- > 0;) {
            if (h[i] < caps_[i]) {
                ++h[i];
                break;
            }
            h[i] = 0;
        }
    }
}

// OptionCursor

OptionCursor::OptionCursor(const GameSpec& spec, const Position& pos)
    : spec_(&spec), pos_(pos.heights())
{
    set_ = 0;
    if (spec.set_count() > 0) {
        set_ = static_cast<std::size_t>(-1);
        advance_set();
    }
}

bool OptionCursor::advance_set()
{
    const GameSpec& spec = *spec_;
    ++set_;
    if (set_ >= spec.set_count()) {
        odo_.reset();
        return false;
    }
    const MoveSet& cur = spec.move_set(set_);
    outside_.clear();
    for (std::size_t j = 0; j < set_; ++j) {
        std::vector<std::size_t> out;
        bool overlaps = false;
        for (std::size_t l = 0; l < cur.size(); ++l) {
            if (spec.in_set(j, cur[l])) overlaps = true;
            else out.push_back(l);
        }
        if (overlaps) outside_.push_back(std::move(out));
    }
    odo_.emplace(cur, pos_);
    return true;
}

bool OptionCursor::duplicate() const
{
    auto vals = odo_->values();
    for (const auto& out : outside_) {
        bool inside = true;
        for (std::size_t l : out)
            if (vals[l] != 0) {
                inside = false;
                break;
            }
        if (inside) return true;
    }
    return false;
}

bool OptionCursor::next(std::vector<Height>& child)
{
    while (odo_) {
        if (!odo_->next()) {
            advance_set();
            continue;
        }
        ++generated_;
        if (duplicate()) continue;
        child = pos_;
        auto vals = odo_->values();
        auto coords = odo_->coords();
        for (std::size_t l = 0; l < coords.size(); ++l) child[static_cast<std::size_t>(coords[l])] -= vals[l];
        return true;
    }
    return false;
}

// Oracle

struct Oracle::SpecEntry {
    struct Shard {
        std::mutex mu;
        std::unordered_map<std::vector<Height>, Outcome, VectorHash> map;
    };

    explicit SpecEntry(const GameSpec& s) : spec(s), symmetric(s.reversal_symmetric()) {}

    GameSpec spec;
    bool symmetric;
    std::array<Shard, kShards> shards;
    std::atomic<std::uint64_t> entries{0};
    std::mutex tables_mu;
    std::vector<std::shared_ptr<const OutcomeTable>> tables;

    std::optional<Outcome> find(const std::vector<Height>& key)
    {
        auto& sh = shards[VectorHash{}(key) % kShards];
        std::lock_guard lock(sh.mu);
        auto it = sh.map.find(key);
        if (it == sh.map.end()) return std::nullopt;
        return it->second;
    }

    void store(const std::vector<Height>& key, Outcome o)
    {
        auto& sh = shards[VectorHash{}(key) % kShards];
        std::lock_guard lock(sh.mu);
        if (sh.map.emplace(key, o).second) entries.fetch_add(1, std::memory_order_relaxed);
    }

    std::optional<Outcome> from_tables(const Position& pos)
    {
        std::lock_guard lock(tables_mu);
        for (const auto& t : tables)
            if (t->covers(pos)) return t->at(pos);
        return std::nullopt;
    }
};

Oracle::Oracle(OracleBudget budget, bool mirror_canonical) : budget_(budget), mirror_canonical_(mirror_canonical) {}

Oracle::~Oracle() = default;

Oracle::SpecEntry& Oracle::entry(const GameSpec& spec)
{
    std::lock_guard lock(entries_mutex_);
    auto& slot = entries_[spec.identity()];
    if (!slot) slot = std::make_unique<SpecEntry>(spec);
    return *slot;
}

void Oracle::count_options(std::uint64_t n)
{
    const auto total = options_.fetch_add(n, std::memory_order_relaxed) + n;
    if (total > budget_.options)
        throw BudgetExceeded("oracle option budget of " + std::to_string(budget_.options) + " exceeded");
}

Outcome Oracle::classify(const GameSpec& spec, const Position& pos)
{
    check_position(spec, pos);
    SpecEntry& e = entry(spec);
    if (auto t = e.from_tables(pos)) {
        hits_.fetch_add(1, std::memory_order_relaxed);
        return *t;
    }
    return search(spec, e, pos);
}

Outcome Oracle::search(const GameSpec& spec, SpecEntry& e, const Position& root)
{
    const bool canon = mirror_canonical_ && e.symmetric;
    auto key_of = [canon](const std::vector<Height>& h) {
        if (!canon) return h;
        std::vector<Height> r(h.rbegin(), h.rend());
        return std::min(h, r);
    };

    if (auto hit = e.find(key_of(root.heights()))) {
        hits_.fetch_add(1, std::memory_order_relaxed);
        return *hit;
    }
    misses_.fetch_add(1, std::memory_order_relaxed);

    struct Frame {
        std::vector<Height> pos;
        OptionCursor cursor;
        std::vector<Height> pending;
        bool has_pending = false;
        std::uint64_t counted = 0;
    };
    std::vector<Frame> stack;
    stack.push_back(Frame{root.heights(), OptionCursor(spec, root), {}, false, 0});

    std::optional<Outcome> result;
    std::vector<Height> child;
    while (!stack.empty()) {
        Frame& f = stack.back();
        std::optional<Outcome> decided;

        if (f.has_pending) {
            f.has_pending = false;
            auto o = e.find(key_of(f.pending));
            if (o && *o == Outcome::P) decided = Outcome::N;
        }
        bool descended = false;
        while (!decided) {
            if (!f.cursor.next(child)) {
                decided = Outcome::P;
                break;
            }
            auto o = e.find(key_of(child));
            if (!o) {
                if (auto t = e.from_tables(Position(child))) {
                    o = t;
                }
            }
            if (o) {
                if (*o == Outcome::P) decided = Outcome::N;
                continue;
            }
            f.pending = child;
            f.has_pending = true;
            descended = true;
            break;
        }
        const std::uint64_t gen = f.cursor.generated();
        count_options(gen - f.counted);
        f.counted = gen;

        if (descended) {
            std::vector<Height> next = f.pending;
            Position p(next);
            stack.push_back(Frame{std::move(next), OptionCursor(spec, p), {}, false, 0});
            continue;
        }
        e.store(key_of(f.pos), *decided);
        if (e.entries.load(std::memory_order_relaxed) > budget_.memo_entries)
            throw BudgetExceeded("oracle memo budget of " + std::to_string(budget_.memo_entries) +
                                 " entries exceeded");
        if (stack.size() == 1) result = decided;
        stack.pop_back();
    }
    return *result;
}

std::vector<Move> Oracle::winning_options(const GameSpec& spec, const Position& pos)
{
    std::vector<Move> out;
    for (const Move& m : legal_moves(spec, pos)) {
        std::vector<Height> h = pos.heights();
        for (std::size_t i = 0; i < h.size(); ++i) h[i] -= m.removals[i];
        if (classify(spec, Position(std::move(h))) == Outcome::P) out.push_back(m);
    }
    return out;
}

namespace {

struct BoxSolver {
    const GameSpec& spec;
    const std::vector<Height>& caps;
    std::vector<std::size_t> strides;
    std::vector<std::uint8_t>& table;

    // P = 0, N = 1; options counted into `generated`
    std::uint8_t solve(std::size_t index, const std::vector<Height>& digits, std::vector<Height>& r,
                       std::uint64_t& generated) const
    {
        for (const MoveSet& set : spec.move_sets()) {
            const std::size_t k = set.size();
            std::fill(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k), 0);
            std::size_t offset = 0;
            while (true) {
                std::size_t i = k;
                while (i-- > 0) {
                    const auto v = static_cast<std::size_t>(set[i]);
                    if (r[i] < digits[v]) {
                        ++r[i];
                        offset += strides[v];
                        break;
                    }
                    offset -= static_cast<std::size_t>(r[i]) * strides[v];
                    r[i] = 0;
                }
                if (i == static_cast<std::size_t>(-1)) break;
                ++generated;
                if (table[index - offset] == 0) return 1;
            }
        }
        return 0;
    }
};

}  // namespace

std::shared_ptr<const OutcomeTable> Oracle::solve_box(const GameSpec& spec, const std::vector<Height>& caps,
                                                      unsigned workers)
{
    check_position(spec, Position(caps));
    SpecEntry& e = entry(spec);
    {
        std::lock_guard lock(e.tables_mu);
        for (const auto& t : e.tables)
            if (t->covers(Position(caps))) {
                bool same = t->caps() == caps;
                if (same) return t;
            }
    }

    long double size = 1;
    for (Height c : caps) size *= static_cast<long double>(c + 1);
    if (size > static_cast<long double>(budget_.memo_entries))
        throw BudgetExceeded("box of " + std::to_string(static_cast<unsigned long long>(size)) +
                             " positions exceeds the oracle memo budget of " + std::to_string(budget_.memo_entries));
    const auto count = static_cast<std::size_t>(size);
    const std::size_t n = caps.size();

    std::vector<std::uint8_t> table(count, 0);
    BoxSolver solver{spec, caps, std::vector<std::size_t>(n), table};
    {
        std::size_t stride = 1;
        for (std::size_t i = n; i-- > 0;) {
            solver.strides[i] = stride;
            stride *= static_cast<std::size_t>(caps[i] + 1);
        }
    }
    std::size_t widest = 0;
    for (const auto& s : spec.move_sets()) widest = std::max(widest, s.size());

    if (workers <= 1 || count < 4096) {
        std::vector<Height> digits(n, 0), r(widest, 0);
        std::uint64_t generated = 0;
        for (std::size_t idx = 0; idx < count; ++idx) {
            table[idx] = solver.solve(idx, digits, r, generated);
            if (generated > (1u << 20)) {
                count_options(generated);
                generated = 0;
            }
            for (std::size_t i = n; i-- > 0;) {
                if (digits[i] < caps[i]) {
                    ++digits[i];
                    break;
                }
                digits[i] = 0;
            }
        }
        count_options(generated);
    } else {
        // options always have a strictly smaller token total, so every
        // level of equal totals can be solved in parallel
        Height max_level = 0;
        for (Height c : caps) max_level += c;
        std::vector<std::vector<std::size_t>> levels(static_cast<std::size_t>(max_level) + 1);
        {
            std::vector<Height> digits(n, 0);
            Height level = 0;
            for (std::size_t idx = 0; idx < count; ++idx) {
                levels[static_cast<std::size_t>(level)].push_back(idx);
                for (std::size_t i = n; i-- > 0;) {
                    if (digits[i] < caps[i]) {
                        ++digits[i];
                        ++level;
                        break;
                    }
                    level -= digits[i];
                    digits[i] = 0;
                }
            }
        }
        for (const auto& level : levels) {
            const std::size_t chunk = (level.size() + workers - 1) / workers;
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            for (unsigned w = 0; w < workers; ++w) {
                const std::size_t lo = w * chunk;
                const std::size_t hi = std::min(level.size(), lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back([&, w, lo, hi] {
                    try {
                        std::vector<Height> digits(n), r(widest, 0);
                        std::uint64_t generated = 0;
                        for (std::size_t j = lo; j < hi; ++j) {
                            std::size_t idx = level[j], rest = idx;
                            for (std::size_t i = 0; i < n; ++i) {
                                digits[i] = static_cast<Height>(rest / solver.strides[i]);
                                rest %= solver.strides[i];
                            }
                            table[idx] = solver.solve(idx, digits, r, generated);
                        }
                        count_options(generated);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (auto& err : errors)
                if (err) std::rethrow_exception(err);
        }
    }

    auto result = std::make_shared<const OutcomeTable>(caps, std::move(table));
    std::lock_guard lock(e.tables_mu);
    e.tables.push_back(result);
    return result;
}

std::vector<Position> Oracle::enumerate_p_positions(const GameSpec& spec, Height cap, unsigned workers)
{
    if (cap < 0) throw ParameterError("height cap must be >= 0");
    auto table = solve_box(spec, std::vector<Height>(static_cast<std::size_t>(spec.size()), cap), workers);
    std::vector<Position> out;
    table->for_each([&](const Position& p, Outcome o) {
        if (o == Outcome::P) out.push_back(p);
    });
    return out;
}

OracleStats Oracle::stats() const
{
    OracleStats s;
    s.hits = hits_.load();
    s.misses = misses_.load();
    s.options = options_.load();
    std::lock_guard lock(entries_mutex_);
    for (const auto& [id, e] : entries_) s.memo_entries += e->entries.load();
    return s;
}

void Oracle::clear()
{
    std::lock_guard lock(entries_mutex_);
    entries_.clear();
    hits_ = 0;
    misses_ = 0;
    options_ = 0;
}

}  // namespace nnim
