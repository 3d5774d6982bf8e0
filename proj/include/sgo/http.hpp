#pragma once

// HTTP+JSON binding of MatchService.
//
//   POST /match                  {size, setup:[{code, point}], max_turns}
//   POST /match/{id}/join        {token}
//   POST /match/{id}/move        {token, turn, move}
//   GET  /match/{id}/state       ?token=
//   POST /match/{id}/resign      {token}
//   GET  /match/{id}/events      ?since=&timeout_ms=   (long poll)

#include <chrono>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "sgo/service.hpp"

namespace sgo::http {

using nlohmann::json;

inline int http_status(ErrorCode c) {
    switch (c) {
        case ErrorCode::unknown_match: return 404;
        case ErrorCode::unauthorized: return 403;
        case ErrorCode::wrong_turn:
        case ErrorCode::already_committed_differently:
        case ErrorCode::match_finished:
        case ErrorCode::not_joined:
        case ErrorCode::game_over: return 409;
        case ErrorCode::invalid_move:
        case ErrorCode::occupied_point:
        case ErrorCode::out_of_bounds: return 422;
        case ErrorCode::io_error: return 500;
        default: return 400;
    }
}

inline void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, ErrorCode code, const std::string& message) {
    send_json(res, http_status(code), json{{"error", error_name(code)}, {"message", message}});
}

inline GameConfig config_from_json(const json& body) {
    GameConfig cfg;
    cfg.size = body.value("size", kDefaultSize);
    if (cfg.size < kMinSize || cfg.size > kMaxSize)
        throw Error(ErrorCode::invalid_size, "board size " + std::to_string(cfg.size) + " out of range");
    if (body.contains("max_turns") && !body["max_turns"].is_null()) cfg.max_turns = body["max_turns"].get<int>();
    for (const auto& s : body.value("setup", json::array())) {
        auto cell = parse_cell_code(s.at("code").get<std::string>());
        auto p = parse_coord(s.at("point").get<std::string>(), cfg.size);
        if (!cell || !p) throw Error(ErrorCode::invalid_setup, "bad setup entry " + s.dump());
        cfg.setup.push_back(SetupStone{*p, *cell});
    }
    return cfg;
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        send_error(res, e.code(), e.what());
    } catch (const json::exception& e) {
        send_error(res, ErrorCode::parse_error, e.what());
    } catch (const std::logic_error& e) {
        send_error(res, ErrorCode::parse_error, e.what());
    }
}

inline json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
}

inline void install_routes(httplib::Server& server, service::MatchService& svc) {
    server.Post("/match", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            auto created = svc.create_match(config_from_json(parse_body(req)));
            send_json(res, 201,
                      json{{"match_id", created.match_id},
                           {"black_token", created.black_token},
                           {"white_token", created.white_token}});
        });
    });
    server.Post(R"(/match/([0-9a-f]+)/join)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = parse_body(req);
            Color c = svc.join(req.matches[1], body.value("token", ""));
            send_json(res, 200, json{{"color", color_name(c)}});
        });
    });
    server.Post(R"(/match/([0-9a-f]+)/move)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = parse_body(req);
            const std::string id = req.matches[1];
            auto move = parse_move(body.value("move", ""), svc.board_size(id));
            if (!move) throw Error(ErrorCode::invalid_move, "unreadable move '" + body.value("move", "") + "'");
            auto r = svc.submit_move(id, body.value("token", ""), *move, body.value("turn", -1));
            json out{{"status", r.resolved ? "resolved" : "committed"}, {"turn", r.turn}};
            if (r.resolved) out["outcome"] = r.outcome;
            send_json(res, 200, out);
        });
    });
    server.Get(R"(/match/([0-9a-f]+)/state)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] { send_json(res, 200, svc.get_state(req.matches[1], req.get_param_value("token"))); });
    });
    server.Post(R"(/match/([0-9a-f]+)/resign)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            json body = parse_body(req);
            send_json(res, 200, svc.resign(req.matches[1], body.value("token", "")));
        });
    });
    server.Get(R"(/match/([0-9a-f]+)/events)", [&](const httplib::Request& req, httplib::Response& res) {
        guarded(res, [&] {
            int since = req.has_param("since") ? std::stoi(req.get_param_value("since")) : 0;
            int timeout = req.has_param("timeout_ms") ? std::stoi(req.get_param_value("timeout_ms")) : 25000;
            timeout = std::clamp(timeout, 0, 60000);
            send_json(res, 200, svc.events_since(req.matches[1], since, std::chrono::milliseconds(timeout)));
        });
    });
}

}  // namespace sgo::http
