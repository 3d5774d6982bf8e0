#pragma once

// Two-player match sessions with blind move commitment. Each player commits
// a move for the current turn; nothing about it is visible to anyone until
// the other player has committed too, at which point the turn resolves.

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgo/match.hpp"
#include "sgo/record.hpp"
#include "sgo/wire.hpp"

namespace sgo::service {

using nlohmann::json;

enum class Status { open, in_progress, finished, abandoned };

inline std::string_view status_name(Status s) {
    switch (s) {
        case Status::open: return "open";
        case Status::in_progress: return "in_progress";
        case Status::finished: return "finished";
        case Status::abandoned: return "abandoned";
    }
    return "open";
}

inline std::optional<Status> parse_status(std::string_view s) {
    for (Status st : {Status::open, Status::in_progress, Status::finished, Status::abandoned})
        if (status_name(st) == s) return st;
    return std::nullopt;
}

struct Created {
    std::string match_id;
    std::string black_token;
    std::string white_token;
};

struct SubmitResult {
    bool resolved = false;
    int turn = 0;     // the turn the move was committed for
    json outcome;     // resolved turn, when `resolved`
};

inline std::string random_hex(std::size_t bytes) {
    static thread_local std::random_device rd;
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < bytes; ++i) {
        unsigned v = rd() & 0xffu;
        out += digits[v >> 4];
        out += digits[v & 0xf];
    }
    return out;
}

class MatchService {
public:
    // With a data directory, sessions are journaled there and recovered on construction.
    explicit MatchService(std::optional<std::filesystem::path> data_dir = std::nullopt)
        : data_dir_(std::move(data_dir)) {
        if (data_dir_) {
            std::filesystem::create_directories(*data_dir_);
            recover();
        }
    }

    Created create_match(const GameConfig& cfg) {
        auto s = std::make_shared<Session>();
        s->game = new_game(cfg);  // throws on invalid config
        s->setup = cfg.setup;
        s->id = random_hex(8);
        s->tokens[0] = random_hex(16);
        s->tokens[1] = random_hex(16);
        {
            std::lock_guard lock(map_mu_);
            while (sessions_.contains(s->id)) s->id = random_hex(8);
            sessions_[s->id] = s;
        }
        std::lock_guard lock(s->mu);
        journal_create(*s);
        return Created{s->id, s->tokens[0], s->tokens[1]};
    }

    Color join(const std::string& id, const std::string& token) {
        auto s = find(id);
        std::lock_guard lock(s->mu);
        Color c = authenticate(*s, token);
        if (s->status == Status::finished || s->status == Status::abandoned)
            throw Error(ErrorCode::match_finished, "match is finished");
        s->joined[slot(c)] = true;
        if (s->joined[0] && s->joined[1] && s->status == Status::open) s->status = Status::in_progress;
        journal_header(*s);
        return c;
    }

    SubmitResult submit_move(const std::string& id, const std::string& token, const Move& move, int turn) {
        auto s = find(id);
        std::unique_lock lock(s->mu);
        Color c = authenticate(*s, token);
        if (s->status == Status::finished || s->status == Status::abandoned)
            throw Error(ErrorCode::match_finished, "match is finished");
        if (s->status != Status::in_progress) throw Error(ErrorCode::not_joined, "both players must join first");
        int current = s->game.turn + 1;
        if (turn != current)
            throw Error(ErrorCode::wrong_turn, "turn " + std::to_string(turn) + " is not the current turn " +
                                                   std::to_string(current));
        auto& mine = s->pending[slot(c)];
        if (mine) {
            if (*mine == move) return SubmitResult{false, current, {}};
            throw Error(ErrorCode::already_committed_differently, "a different move is already committed");
        }
        try {
            validate_move(s->game.board, move);
        } catch (const Error& e) {
            throw Error(ErrorCode::invalid_move, e.what());
        }
        mine = move;
        if (!s->pending[0] || !s->pending[1]) return SubmitResult{false, current, {}};

        TurnInput t{*s->pending[0], *s->pending[1]};
        s->game = step(std::move(s->game), t);
        s->pending[0].reset();
        s->pending[1].reset();
        if (s->game.over) s->status = Status::finished;
        journal_turn(*s, t);
        if (s->game.over) journal_header(*s);
        json outcome = wire::resolved_turn(current, s->game.history.back());
        s->cv.notify_all();
        return SubmitResult{true, current, std::move(outcome)};
    }

    // Public view; `token` empty for spectators. Never includes pending move contents.
    json get_state(const std::string& id, const std::string& token = {}) const {
        auto s = find(id);
        std::lock_guard lock(s->mu);
        std::optional<Color> viewer;
        if (!token.empty()) viewer = authenticate(*s, token);
        return view(*s, viewer);
    }

    json resign(const std::string& id, const std::string& token) {
        auto s = find(id);
        std::lock_guard lock(s->mu);
        Color c = authenticate(*s, token);
        if (s->status == Status::finished || s->status == Status::abandoned)
            throw Error(ErrorCode::match_finished, "match is already finished");
        s->status = Status::finished;
        s->resigned = c;
        s->pending[0].reset();
        s->pending[1].reset();
        journal_header(*s);
        s->cv.notify_all();
        return view(*s, c);
    }

    // Resolved turns numbered above `since`, waiting up to `timeout` for one to appear.
    json events_since(const std::string& id, int since, std::chrono::milliseconds timeout) const {
        auto s = find(id);
        std::unique_lock lock(s->mu);
        s->cv.wait_for(lock, timeout, [&] {
            return s->game.turn > since || s->status == Status::finished || s->status == Status::abandoned;
        });
        json out = json::array();
        for (int i = std::max(since, 0); i < s->game.turn; ++i)
            out.push_back(wire::resolved_turn(i + 1, s->game.history[static_cast<std::size_t>(i)]));
        return json{{"events", std::move(out)}, {"status", status_name(s->status)}, {"turn", s->game.turn + 1}};
    }

    int board_size(const std::string& id) const {
        auto s = find(id);
        std::lock_guard lock(s->mu);
        return s->game.board.size();
    }

    std::vector<std::string> match_ids() const {
        std::lock_guard lock(map_mu_);
        std::vector<std::string> ids;
        for (const auto& [id, _] : sessions_) ids.push_back(id);
        return ids;
    }

private:
    struct Session {
        mutable std::mutex mu;
        mutable std::condition_variable cv;
        std::string id;
        std::string tokens[2];
        bool joined[2] = {false, false};
        GameState game;
        std::vector<SetupStone> setup;
        std::optional<Move> pending[2];
        Status status = Status::open;
        std::optional<Color> resigned;
    };

    static int slot(Color c) { return c == Color::black ? 0 : 1; }

    std::shared_ptr<Session> find(const std::string& id) const {
        std::lock_guard lock(map_mu_);
        auto it = sessions_.find(id);
        if (it == sessions_.end()) throw Error(ErrorCode::unknown_match, "no match " + id);
        return it->second;
    }

    static Color authenticate(const Session& s, const std::string& token) {
        if (!token.empty() && token == s.tokens[0]) return Color::black;
        if (!token.empty() && token == s.tokens[1]) return Color::white;
        throw Error(ErrorCode::unauthorized, "token does not belong to this match");
    }

    static json view(const Session& s, std::optional<Color> viewer) {
        json history = json::array();
        for (std::size_t i = 0; i < s.game.history.size(); ++i)
            history.push_back(wire::resolved_turn(static_cast<int>(i) + 1, s.game.history[i]));
        json pairs = json::object();
        for (const auto& [id, e] : s.game.board.registry())
            pairs[std::to_string(id)] = json{{"black", wire::points(e.black)}, {"white", wire::points(e.white)}};
        json j{{"match_id", s.id},
               {"size", s.game.board.size()},
               {"board", wire::board_rows(s.game.board)},
               {"pairs", std::move(pairs)},
               {"turn", s.game.turn + 1},
               {"prisoners_black", s.game.prisoners_black},
               {"prisoners_white", s.game.prisoners_white},
               {"status", status_name(s.status)},
               {"joined", {{"black", s.joined[0]}, {"white", s.joined[1]}}},
               {"committed", {{"black", s.pending[0].has_value()}, {"white", s.pending[1].has_value()}}},
               {"history", std::move(history)}};
        j["you"] = viewer ? json(color_name(*viewer)) : json("spectator");
        if (s.status == Status::finished) {
            if (s.resigned) {
                j["result"] = json{{"winner", color_name(opposite(*s.resigned))}, {"by", "resignation"}};
            } else {
                Score sc = score(s.game);
                j["result"] = json{{"winner", outcome_name(sc.outcome)}, {"by", "score"}, {"score", wire::to_json(sc)}};
            }
        }
        return j;
    }

    // Journal: <id>.sgo is an append-only game record, <id>.session the header.
    std::optional<std::filesystem::path> path_for(const Session& s, const char* ext) const {
        if (!data_dir_) return std::nullopt;
        return *data_dir_ / (s.id + ext);
    }

    void journal_create(const Session& s) {
        if (auto p = path_for(s, ".sgo")) {
            std::ofstream out(*p, std::ios::trunc);
            out << serialize(GameRecord{s.game.board.size(), s.setup, {}});
            if (!out) throw Error(ErrorCode::io_error, "cannot write " + p->string());
        }
        journal_header(s);
    }

    void journal_turn(const Session& s, const TurnInput& t) {
        if (auto p = path_for(s, ".sgo")) {
            std::ofstream out(*p, std::ios::app);
            out << s.game.turn << ". B " << to_string(t.black) << " W " << to_string(t.white) << '\n';
            if (!out) throw Error(ErrorCode::io_error, "cannot append to " + p->string());
        }
    }

    void journal_header(const Session& s) {
        auto p = path_for(s, ".session");
        if (!p) return;
        json h{{"id", s.id},
               {"black_token", s.tokens[0]},
               {"white_token", s.tokens[1]},
               {"joined", {s.joined[0], s.joined[1]}},
               {"status", status_name(s.status)},
               {"max_turns", s.game.max_turns ? json(*s.game.max_turns) : json(nullptr)}};
        if (s.resigned) h["resigned"] = color_name(*s.resigned);
        auto tmp = *p;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << h.dump(2) << '\n';
            if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
        }
        std::filesystem::rename(tmp, *p);
    }

    void recover() {
        for (const auto& entry : std::filesystem::directory_iterator(*data_dir_)) {
            if (entry.path().extension() != ".session") continue;
            std::ifstream hin(entry.path());
            json h = json::parse(hin);
            auto rec_path = entry.path();
            rec_path.replace_extension(".sgo");
            std::ifstream rin(rec_path);
            std::string text((std::istreambuf_iterator<char>(rin)), std::istreambuf_iterator<char>());
            GameRecord rec = parse_record(text);

            auto s = std::make_shared<Session>();
            s->id = h.at("id").get<std::string>();
            s->tokens[0] = h.at("black_token").get<std::string>();
            s->tokens[1] = h.at("white_token").get<std::string>();
            s->joined[0] = h.at("joined").at(0).get<bool>();
            s->joined[1] = h.at("joined").at(1).get<bool>();
            s->status = parse_status(h.at("status").get<std::string>()).value_or(Status::open);
            std::optional<int> max_turns;
            if (!h.at("max_turns").is_null()) max_turns = h.at("max_turns").get<int>();
            if (h.contains("resigned")) s->resigned = h["resigned"] == "black" ? Color::black : Color::white;
            s->setup = rec.setup;
            s->game = replay(rec, max_turns);
            if (s->game.over) s->status = Status::finished;
            sessions_[s->id] = s;
        }
    }

    std::optional<std::filesystem::path> data_dir_;
    mutable std::mutex map_mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace sgo::service
