#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "sgo/board.hpp"
#include "sgo/match.hpp"

namespace sgo::sim {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Small deterministic generator; identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() { return splitmix64(state_++ * 0x2545f4914f6cdd1dULL); }
    // Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do v = next();
        while (v >= limit);
        return v % n;
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

enum class PolicyKind { uniform_random, greedy_capture };

struct BotPolicy {
    PolicyKind kind = PolicyKind::uniform_random;
    std::uint64_t seed = 0;
    double pass_probability = 0.01;
};

inline std::string_view policy_name(PolicyKind k) {
    return k == PolicyKind::uniform_random ? "random" : "greedy";
}

// The generator for a decision depends only on the policy seed and the turn,
// never on which color the bot plays.
inline Rng decision_rng(const BotPolicy& p, int turn) {
    return Rng(splitmix64(p.seed ^ splitmix64(static_cast<std::uint64_t>(turn) + 1)));
}

namespace detail {

// Smallest liberty count of an enemy plain or e-group after `c` plays `idx`,
// ignoring the opponent's simultaneous reply.
inline int enemy_pressure(const Board& b, int idx, Color c) {
    Board probe = b;
    probe.set(probe.point(idx), plain(c));
    int best = std::numeric_limits<int>::max();
    for (const Group& g : compute_groups(probe)) {
        bool enemy = (c == Color::black) ? (g.kind == GroupKind::white || g.kind == GroupKind::ewhite)
                                         : (g.kind == GroupKind::black || g.kind == GroupKind::eblack);
        if (!enemy) continue;
        bool adjacent = false;
        for (Point s : g.stones)
            for (Point q : neighbors(s, b.size())) adjacent |= b.index(q) == idx;
        if (adjacent) best = std::min(best, static_cast<int>(liberties(probe, g).size()));
    }
    return best;
}

}  // namespace detail

inline Move pick_move(const BotPolicy& policy, const GameState& g, Color perspective) {
    std::vector<int> empties;
    for (int idx = 0; idx < g.board.area(); ++idx)
        if (g.board.at(idx).kind == CellKind::empty) empties.push_back(idx);
    if (empties.empty()) return Pass{};
    Rng rng = decision_rng(policy, g.turn);
    if (rng.unit() < policy.pass_probability) return Pass{};

    if (policy.kind == PolicyKind::uniform_random) {
        std::uint64_t k = rng.below(empties.size() + 1);
        if (k == empties.size()) return Pass{};
        return Place{g.board.point(empties[k])};
    }

    // Greedy: the placement leaving some adjacent enemy group with the fewest
    // liberties; ties broken by a seeded shuffle; no adjacent enemy -> random.
    std::vector<int> order = empties;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    int best_idx = order.front();
    int best = std::numeric_limits<int>::max();
    for (int idx : order) {
        int pressure = detail::enemy_pressure(g.board, idx, perspective);
        if (pressure < best) {
            best = pressure;
            best_idx = idx;
        }
    }
    return Place{g.board.point(best_idx)};
}

struct GameSummary {
    int index = 0;
    int length = 0;
    Outcome winner = Outcome::tie;
    int prisoners_black = 0;
    int prisoners_white = 0;
    int reds = 0;
    int entanglements = 0;
};

struct SelfPlayConfig {
    int size = 7;
    BotPolicy black{};
    BotPolicy white{};
    int games = 1;
    int max_turns = 400;
    std::uint64_t seed = 0;
    // Odd games replay the preceding even game's seeds with colors swapped.
    bool paired = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct SelfPlayStats {
    int games = 0;
    double mean_game_length = 0;
    double red_created_per_game = 0;
    double entanglements_per_game = 0;
    double tie_rate = 0;
    double win_rate_black = 0;
    double win_rate_white = 0;
    std::vector<GameSummary> per_game;
};

// Seeds for game `i`: (black, white).
inline std::pair<std::uint64_t, std::uint64_t> game_seeds(std::uint64_t master, int i, bool paired) {
    int base = paired ? i - i % 2 : i;
    std::uint64_t sb = splitmix64(master ^ splitmix64(2 * static_cast<std::uint64_t>(base)));
    std::uint64_t sw = splitmix64(master ^ splitmix64(2 * static_cast<std::uint64_t>(base) + 1));
    if (paired && i % 2 == 1) std::swap(sb, sw);
    return {sb, sw};
}

inline GameSummary play_one(const SelfPlayConfig& cfg, int index) {
    auto [sb, sw] = game_seeds(cfg.seed, index, cfg.paired);
    BotPolicy black = cfg.black;
    BotPolicy white = cfg.white;
    if (cfg.paired && index % 2 == 1) std::swap(black, white);
    black.seed = sb;
    white.seed = sw;

    GameState g = new_game(GameConfig{cfg.size, {}, cfg.max_turns});
    GameSummary s;
    s.index = index;
    while (!g.over) {
        TurnInput t{pick_move(black, g, Color::black), pick_move(white, g, Color::white)};
        g = step(std::move(g), t);
        for (const Event& e : g.history.back().outcome.events) {
            s.reds += std::holds_alternative<event::RedCreated>(e);
            s.entanglements += std::holds_alternative<event::EntangleCreated>(e);
        }
        g.history.clear();  // not needed for statistics
    }
    Score sc = score(g);
    s.length = g.turn;
    s.winner = sc.outcome;
    s.prisoners_black = g.prisoners_black;
    s.prisoners_white = g.prisoners_white;
    return s;
}

inline SelfPlayStats selfplay(const SelfPlayConfig& cfg) {
    if (cfg.games < 1) throw Error(ErrorCode::invalid_setup, "games must be at least 1");
    if (cfg.max_turns < 1) throw Error(ErrorCode::invalid_setup, "max turns must be at least 1");
    std::vector<GameSummary> results(static_cast<std::size_t>(cfg.games));
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(cfg.games));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (int i = static_cast<int>(w); i < cfg.games; i += static_cast<int>(threads))
                    results[static_cast<std::size_t>(i)] = play_one(cfg, i);
            });
        }
    }
    SelfPlayStats st;
    st.games = cfg.games;
    long long length = 0, reds = 0, entanglements = 0;
    int black_wins = 0, white_wins = 0;
    for (const auto& r : results) {
        length += r.length;
        reds += r.reds;
        entanglements += r.entanglements;
        black_wins += r.winner == Outcome::black_wins;
        white_wins += r.winner == Outcome::white_wins;
    }
    double n = cfg.games;
    st.mean_game_length = static_cast<double>(length) / n;
    st.red_created_per_game = static_cast<double>(reds) / n;
    st.entanglements_per_game = static_cast<double>(entanglements) / n;
    st.win_rate_black = black_wins / n;
    st.win_rate_white = white_wins / n;
    st.tie_rate = (cfg.games - black_wins - white_wins) / n;
    st.per_game = std::move(results);
    return st;
}

inline std::string to_csv(const SelfPlayConfig& cfg, const SelfPlayStats& st) {
    std::ostringstream out;
    out << "index,length,winner,prisoners_black,prisoners_white,red_count,entangle_count\n";
    for (const auto& g : st.per_game)
        out << g.index << ',' << g.length << ',' << outcome_name(g.winner) << ',' << g.prisoners_black << ','
            << g.prisoners_white << ',' << g.reds << ',' << g.entanglements << '\n';
    out.setf(std::ios::fixed);
    out.precision(6);
    out << "# summary\n"
        << "# size " << cfg.size << " black " << policy_name(cfg.black.kind) << " white "
        << policy_name(cfg.white.kind) << " seed " << cfg.seed << " max_turns " << cfg.max_turns
        << (cfg.paired ? " paired" : "") << '\n'
        << "# seed split: game i uses splitmix64(seed ^ splitmix64(2i)) for black, 2i+1 for white\n"
        << "# games " << st.games << '\n'
        << "# mean_game_length " << st.mean_game_length << '\n'
        << "# red_created_per_game " << st.red_created_per_game << '\n'
        << "# entanglements_per_game " << st.entanglements_per_game << '\n'
        << "# win_rate_black " << st.win_rate_black << '\n'
        << "# win_rate_white " << st.win_rate_white << '\n'
        << "# tie_rate " << st.tie_rate << '\n';
    return out.str();
}

}  // namespace sgo::sim
