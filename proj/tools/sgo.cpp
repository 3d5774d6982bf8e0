#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <termios.h>
#include <unistd.h>

#include <CLI11.hpp>

#include "sgo/http.hpp"
#include "sgo/match.hpp"
#include "sgo/oracle.hpp"
#include "sgo/record.hpp"
#include "sgo/simulation.hpp"

namespace {

// Exit statuses.
constexpr int kCheckFailed = 1;
constexpr int kBadFlags = 2;
constexpr int kUnknownCommand = 3;
constexpr int kFileError = 4;
constexpr int kRecordError = 5;
constexpr int kGameError = 6;

struct Failure {
    int status;
    std::string message;
};

std::string read_file(const std::string& path) {
    if (!std::filesystem::exists(path)) throw Failure{kFileError, path + ": file not found"};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{kFileError, path + ": cannot open"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

sgo::GameRecord load_record(const std::string& path) {
    std::string text = read_file(path);
    try {
        return sgo::parse_record(text);
    } catch (const sgo::ParseError& e) {
        throw Failure{kRecordError, path + ":" + std::string(e.what())};
    }
}

sgo::GameState replay_or_fail(const sgo::GameRecord& r) {
    try {
        return sgo::replay(r);
    } catch (const sgo::Error& e) {
        throw Failure{kGameError, e.what()};
    }
}

void print_score(std::ostream& out, const sgo::Score& s) {
    out << "black_territory " << s.black_territory << '\n'
        << "white_territory " << s.white_territory << '\n'
        << "prisoners_black " << s.black_prisoners << '\n'
        << "prisoners_white " << s.white_prisoners << '\n'
        << "black_total " << s.black_total << '\n'
        << "white_total " << s.white_total << '\n'
        << "winner " << sgo::outcome_name(s.outcome) << '\n';
}

// Reads one line without echo when stdin is a terminal.
std::optional<std::string> read_concealed(const std::string& prompt) {
    std::cerr << prompt << std::flush;
    bool tty = ::isatty(STDIN_FILENO);
    termios saved{};
    if (tty) {
        ::tcgetattr(STDIN_FILENO, &saved);
        termios quiet = saved;
        quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
        ::tcsetattr(STDIN_FILENO, TCSANOW, &quiet);
    }
    std::string line;
    bool ok = static_cast<bool>(std::getline(std::cin, line));
    if (tty) {
        ::tcsetattr(STDIN_FILENO, TCSANOW, &saved);
        std::cerr << '\n';
    }
    if (!ok) return std::nullopt;
    return line;
}

int run_hotseat(int size, std::optional<int> max_turns) {
    sgo::GameState g = sgo::new_game(sgo::GameConfig{size, {}, max_turns});
    while (!g.over) {
        sgo::TurnInput t;
        for (sgo::Color c : {sgo::Color::black, sgo::Color::white}) {
            while (true) {
                auto line = read_concealed("turn " + std::to_string(g.turn + 1) + ", " +
                                           std::string(sgo::color_name(c)) + " to commit (hidden): ");
                if (!line) throw Failure{kGameError, "input ended before the game did"};
                auto m = sgo::parse_move(*line, size);
                if (!m) {
                    std::cerr << "unreadable move\n";
                    continue;
                }
                try {
                    sgo::validate_move(g.board, *m);
                } catch (const sgo::Error& e) {
                    std::cerr << e.what() << '\n';
                    continue;
                }
                (c == sgo::Color::black ? t.black : t.white) = *m;
                break;
            }
        }
        g = sgo::step(std::move(g), t);
        std::cout << "turn " << g.turn << ": B " << sgo::to_string(t.black) << " W " << sgo::to_string(t.white)
                  << '\n';
        for (const auto& e : g.history.back().outcome.events) std::cout << "  " << sgo::to_string(e) << '\n';
        std::cout << sgo::to_fixture(g.board);
    }
    print_score(std::cout, sgo::score(g));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous-move Go: rules engine, records, oracle, self-play and match server"};
    app.require_subcommand(1);

    int new_size = sgo::kDefaultSize;
    auto* cmd_new = app.add_subcommand("new", "Print an empty game record");
    cmd_new->add_option("--size", new_size, "Board size")->check(CLI::Range(sgo::kMinSize, sgo::kMaxSize));

    std::string replay_path;
    auto* cmd_replay = app.add_subcommand("replay", "Replay a record; print the final board and score if over");
    cmd_replay->add_option("file", replay_path)->required();

    std::string score_path;
    auto* cmd_score = app.add_subcommand("score", "Score the final position of a record");
    cmd_score->add_option("file", score_path)->required();

    int sp_size = 7, sp_games = 100, sp_max_turns = 400;
    std::uint64_t sp_seed = 0;
    std::string sp_policy = "random";
    double sp_pass = 0.01;
    bool sp_paired = false;
    unsigned sp_threads = 0;
    auto* cmd_selfplay = app.add_subcommand("selfplay", "Seeded bot self-play; CSV on stdout");
    cmd_selfplay->add_option("--size", sp_size)->check(CLI::Range(sgo::kMinSize, sgo::kMaxSize));
    cmd_selfplay->add_option("--games", sp_games)->check(CLI::PositiveNumber);
    cmd_selfplay->add_option("--seed", sp_seed);
    cmd_selfplay->add_option("--max-turns", sp_max_turns)->check(CLI::PositiveNumber);
    cmd_selfplay->add_option("--policy", sp_policy, "random | greedy | <black>,<white>");
    cmd_selfplay->add_option("--pass-prob", sp_pass)->check(CLI::Range(0.0, 1.0));
    cmd_selfplay->add_flag("--paired", sp_paired, "Odd games mirror the preceding game with colors swapped");
    cmd_selfplay->add_option("--threads", sp_threads);

    int oc_size = 3, oc_depth = 4;
    std::uint64_t oc_budget = 0, oc_seed = 0;
    auto* cmd_oracle = app.add_subcommand("oracle-check", "Differential check of the engine against the reference");
    cmd_oracle->add_option("--size", oc_size)->check(CLI::Range(sgo::kMinSize, sgo::kMaxSize));
    cmd_oracle->add_option("--depth", oc_depth, "Exhaustive depth (used when --budget is 0)")
        ->check(CLI::NonNegativeNumber);
    cmd_oracle->add_option("--budget", oc_budget, "Cases for seeded random playouts");
    cmd_oracle->add_option("--seed", oc_seed);

    std::string addr = "127.0.0.1:8080";
    std::string data_dir;
    if (const char* env = std::getenv("SGO_DATA_DIR")) data_dir = env;
    auto* cmd_serve = app.add_subcommand("serve", "Run the two-player match server");
    cmd_serve->add_option("--addr", addr, "host:port");
    cmd_serve->add_option("--data-dir", data_dir, "Journal directory (default $SGO_DATA_DIR)");

    int hs_size = sgo::kDefaultSize;
    std::optional<int> hs_max_turns;
    auto* cmd_hotseat = app.add_subcommand("hotseat", "Two players at one terminal; entries are not echoed");
    cmd_hotseat->add_option("--size", hs_size)->check(CLI::Range(sgo::kMinSize, sgo::kMaxSize));
    cmd_hotseat->add_option("--max-turns", hs_max_turns);

    if (argc > 1 && argv[1][0] != '-' && app.get_subcommand_no_throw(argv[1]) == nullptr) {
        std::cerr << "sgo: unknown subcommand '" << argv[1] << "'; run sgo --help\n";
        return kUnknownCommand;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        bool known = argc > 1 && app.get_subcommand_no_throw(argv[1]) != nullptr;
        return known || argc <= 1 ? kBadFlags : kUnknownCommand;
    }

    try {
        if (*cmd_new) {
            std::cout << sgo::serialize(sgo::GameRecord{new_size, {}, {}});
        } else if (*cmd_replay) {
            sgo::GameState g = replay_or_fail(load_record(replay_path));
            std::cout << sgo::to_fixture(g.board);
            if (g.over) print_score(std::cout, sgo::score(g));
        } else if (*cmd_score) {
            sgo::GameState g = replay_or_fail(load_record(score_path));
            if (!g.over) std::cout << "# game not over; scored as the position stands\n";
            print_score(std::cout, sgo::score_board(g.board, g.prisoners_black, g.prisoners_white));
        } else if (*cmd_selfplay) {
            auto parse_policy = [](const std::string& s) {
                if (s == "random") return sgo::sim::PolicyKind::uniform_random;
                if (s == "greedy") return sgo::sim::PolicyKind::greedy_capture;
                throw Failure{kBadFlags, "unknown policy '" + s + "'"};
            };
            sgo::sim::SelfPlayConfig cfg;
            cfg.size = sp_size;
            cfg.games = sp_games;
            cfg.max_turns = sp_max_turns;
            cfg.seed = sp_seed;
            cfg.paired = sp_paired;
            cfg.threads = sp_threads;
            auto comma = sp_policy.find(',');
            cfg.black.kind = parse_policy(sp_policy.substr(0, comma));
            cfg.white.kind = parse_policy(comma == std::string::npos ? sp_policy : sp_policy.substr(comma + 1));
            cfg.black.pass_probability = cfg.white.pass_probability = sp_pass;
            std::cout << sgo::sim::to_csv(cfg, sgo::sim::selfplay(cfg));
        } else if (*cmd_oracle) {
            if (oc_budget == 0 && oc_size > 4) throw Failure{kBadFlags, "exhaustive mode needs --size <= 4; pass --budget"};
            auto report = sgo::oracle::differential_check(oc_size, oc_depth, oc_seed, oc_budget);
            std::cout << sgo::oracle::format_report(report);
            return report.mismatches.empty() ? 0 : kCheckFailed;
        } else if (*cmd_serve) {
            auto colon = addr.rfind(':');
            if (colon == std::string::npos) throw Failure{kBadFlags, "--addr must be host:port"};
            std::string host = addr.substr(0, colon);
            int port = std::stoi(addr.substr(colon + 1));
            std::optional<std::filesystem::path> dir;
            if (!data_dir.empty()) dir = data_dir;
            sgo::service::MatchService svc(dir);
            httplib::Server server;
            sgo::http::install_routes(server, svc);
            std::cerr << "listening on " << host << ':' << port << '\n';
            if (!server.listen(host, port)) throw Failure{kFileError, "cannot listen on " + addr};
        } else if (*cmd_hotseat) {
            return run_hotseat(hs_size, hs_max_turns);
        }
    } catch (const Failure& f) {
        std::cerr << "sgo: " << f.message << '\n';
        return f.status;
    } catch (const sgo::Error& e) {
        std::cerr << "sgo: " << e.what() << '\n';
        return kGameError;
    } catch (const std::exception& e) {
        std::cerr << "sgo: " << e.what() << '\n';
        return kFileError;
    }
    return 0;
}
