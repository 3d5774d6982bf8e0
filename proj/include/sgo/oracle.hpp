#pragma once

// Reference implementation of turn resolution for differential testing.
// Shares data types with the engine but none of its resolution code: every
// step rescans the whole grid and recomputes chains by label propagation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sgo/board.hpp"
#include "sgo/engine.hpp"
#include "sgo/events.hpp"

namespace sgo::oracle {

namespace naive {

struct Grid {
    int n = 0;
    std::vector<std::vector<char>> kind;  // '.', 'B', 'W', 'R', 'b', 'w'; indexed [y][x]
    std::vector<std::vector<int>> pair;
};

inline Grid from_board(const Board& b) {
    Grid g;
    g.n = b.size();
    g.kind.assign(g.n, std::vector<char>(g.n, '.'));
    g.pair.assign(g.n, std::vector<int>(g.n, 0));
    for (int y = 0; y < g.n; ++y) {
        for (int x = 0; x < g.n; ++x) {
            const std::string code = cell_code(b.at(Point{x, y}));
            g.kind[y][x] = code[0];
            if (code.size() > 1) g.pair[y][x] = std::stoi(code.substr(1));
        }
    }
    return g;
}

inline Board to_board(const Grid& g) {
    Board b(g.n);
    std::map<int, std::pair<std::vector<Point>, std::vector<Point>>> pairs;
    for (int y = 0; y < g.n; ++y) {
        for (int x = 0; x < g.n; ++x) {
            char k = g.kind[y][x];
            if (k == 'B') b.set({x, y}, plain(Color::black));
            if (k == 'W') b.set({x, y}, plain(Color::white));
            if (k == 'R') b.set({x, y}, kRed);
            if (k == 'b') pairs[g.pair[y][x]].first.push_back({x, y});
            if (k == 'w') pairs[g.pair[y][x]].second.push_back({x, y});
        }
    }
    for (auto& [id, sides] : pairs) b.entangle(id, sides.first, sides.second);
    return b;
}

inline bool touching(int x1, int y1, int x2, int y2) { return std::abs(x1 - x2) + std::abs(y1 - y2) == 1; }

inline char letter(Color c) { return c == Color::black ? 'B' : 'W'; }
inline char e_letter(Color c) { return c == Color::black ? 'b' : 'w'; }

struct Chain {
    Color color;
    int label;  // smallest y*n+x among its cells
    std::vector<Point> cells;
};

class Turn {
public:
    Turn(Grid grid, int fresh_red) : g(std::move(grid)), fresh(fresh_red) {}

    Grid g;
    int fresh;  // y*n+x of a Red placed this turn, or -1
    std::vector<Event> events;
    int caught[2] = {0, 0};

    std::vector<std::vector<int>> doom;  // 0 live, 1 black dying, 2 white dying

    bool live_plain(int x, int y) const {
        return (g.kind[y][x] == 'B' || g.kind[y][x] == 'W') && doom[y][x] == 0;
    }

    // Chains of live plain stones via repeated min-label relaxation.
    std::vector<Chain> chains() const {
        const int n = g.n;
        std::vector<std::vector<int>> label(n, std::vector<int>(n, -1));
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x)
                if (live_plain(x, y)) label[y][x] = y * n + x;
        bool moved = true;
        while (moved) {
            moved = false;
            for (int y = 0; y < n; ++y)
                for (int x = 0; x < n; ++x) {
                    if (label[y][x] < 0) continue;
                    for (int y2 = 0; y2 < n; ++y2)
                        for (int x2 = 0; x2 < n; ++x2) {
                            if (!touching(x, y, x2, y2) || label[y2][x2] < 0) continue;
                            if (g.kind[y2][x2] != g.kind[y][x]) continue;
                            if (label[y2][x2] < label[y][x]) {
                                label[y][x] = label[y2][x2];
                                moved = true;
                            }
                        }
                }
        }
        std::map<int, Chain> by_label;
        for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
                if (label[y][x] < 0) continue;
                auto [it, fresh_entry] = by_label.try_emplace(
                    label[y][x], Chain{g.kind[y][x] == 'B' ? Color::black : Color::white, label[y][x], {}});
                it->second.cells.push_back({x, y});
            }
        std::vector<Chain> out;
        for (auto& [_, c] : by_label) out.push_back(std::move(c));
        return out;
    }

    bool chain_touches(const Chain& c, const std::function<bool(int, int)>& pred) const {
        for (Point p : c.cells)
            for (int y = 0; y < g.n; ++y)
                for (int x = 0; x < g.n; ++x)
                    if (touching(p.col, p.row, x, y) && pred(x, y)) return true;
        return false;
    }

    std::vector<Chain> dying_candidates(bool spare_killers) const {
        std::vector<Chain> out;
        for (auto& c : chains()) {
            if (chain_touches(c, [&](int x, int y) { return g.kind[y][x] == '.'; })) continue;
            int enemy_doom = c.color == Color::black ? 2 : 1;
            if (spare_killers && chain_touches(c, [&](int x, int y) { return doom[y][x] == enemy_doom; })) continue;
            out.push_back(c);
        }
        return out;
    }

    bool linked(const Chain& blk, const Chain& wht) const {
        for (Point p : blk.cells)
            for (Point q : wht.cells)
                if (touching(p.col, p.row, q.col, q.row)) return true;
        for (int y = 0; y < g.n; ++y)
            for (int x = 0; x < g.n; ++x) {
                auto near_b = [&] { return chain_touches(blk, [&](int a, int b2) { return a == x && b2 == y; }); };
                auto near_w = [&] { return chain_touches(wht, [&](int a, int b2) { return a == x && b2 == y; }); };
                if (g.kind[y][x] == 'R' && near_b() && near_w()) return true;
            }
        // Black touches the white side of a pair whose black side the white chain touches.
        for (int y = 0; y < g.n; ++y)
            for (int x = 0; x < g.n; ++x) {
                if (g.kind[y][x] != 'w') continue;
                if (!chain_touches(blk, [&](int a, int b2) { return a == x && b2 == y; })) continue;
                int id = g.pair[y][x];
                if (chain_touches(wht, [&](int a, int b2) { return g.kind[b2][a] == 'b' && g.pair[b2][a] == id; }))
                    return true;
            }
        return false;
    }

    int unused_pair() const {
        for (int id = 1;; ++id) {
            bool used = false;
            for (int y = 0; y < g.n; ++y)
                for (int x = 0; x < g.n; ++x)
                    if ((g.kind[y][x] == 'b' || g.kind[y][x] == 'w') && g.pair[y][x] == id) used = true;
            if (!used) return id;
        }
    }

    bool own_chain_sealed(int rx, int ry, Color c) const {
        std::set<std::pair<int, int>> region{{rx, ry}};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int y = 0; y < g.n; ++y)
                for (int x = 0; x < g.n; ++x) {
                    if (region.contains({x, y}) || g.kind[y][x] != letter(c)) continue;
                    for (auto [ax, ay] : region)
                        if (touching(ax, ay, x, y)) {
                            region.insert({x, y});
                            grew = true;
                            break;
                        }
                }
        }
        for (auto [ax, ay] : region)
            for (int y = 0; y < g.n; ++y)
                for (int x = 0; x < g.n; ++x)
                    if (touching(ax, ay, x, y) && g.kind[y][x] == '.') return false;
        return true;
    }

    struct Doomed {
        Color color;
        std::vector<Point> cells;
    };

    bool pass_once() {
        bool changed = false;
        doom.assign(g.n, std::vector<int>(g.n, 0));
        std::vector<Doomed> doomed;
        std::vector<Chain> cands = dying_candidates(false);
        while (!cands.empty()) {
            // Components by relaxation over the link relation.
            std::vector<int> comp(cands.size());
            for (std::size_t i = 0; i < cands.size(); ++i) comp[i] = static_cast<int>(i);
            bool moved = true;
            while (moved) {
                moved = false;
                for (std::size_t i = 0; i < cands.size(); ++i)
                    for (std::size_t j = 0; j < cands.size(); ++j) {
                        if (cands[i].color != Color::black || cands[j].color != Color::white) continue;
                        if (!linked(cands[i], cands[j])) continue;
                        int m = std::min(comp[i], comp[j]);
                        if (comp[i] != m || comp[j] != m) {
                            comp[i] = comp[j] = m;
                            moved = true;
                        }
                    }
            }
            // Chains come sorted by label, so component ids order by smallest cell.
            std::vector<std::size_t> victims;
            std::set<int> ids(comp.begin(), comp.end());
            for (int id : ids) {
                std::vector<std::size_t> members;
                for (std::size_t i = 0; i < cands.size(); ++i)
                    if (comp[i] == id) members.push_back(i);
                bool both = false;
                for (std::size_t m : members) both |= cands[m].color != cands[members[0]].color;
                if (!both) {
                    victims.insert(victims.end(), members.begin(), members.end());
                    continue;
                }
                int pid = unused_pair();
                event::EntangleCreated ev{pid, {}, {}};
                for (std::size_t m : members)
                    for (Point p : cands[m].cells) {
                        g.kind[p.row][p.col] = e_letter(cands[m].color);
                        g.pair[p.row][p.col] = pid;
                        (cands[m].color == Color::black ? ev.black : ev.white).push_back(p);
                    }
                std::sort(ev.black.begin(), ev.black.end());
                std::sort(ev.white.begin(), ev.white.end());
                events.push_back(ev);
                changed = true;
            }
            if (victims.empty()) break;
            changed = true;
            std::sort(victims.begin(), victims.end(),
                      [&](std::size_t a, std::size_t b) { return cands[a].label < cands[b].label; });
            std::size_t first_new = doomed.size();
            for (std::size_t v : victims) {
                doomed.push_back(Doomed{cands[v].color, cands[v].cells});
                for (Point p : cands[v].cells) doom[p.row][p.col] = cands[v].color == Color::black ? 1 : 2;
            }

            // Markers used by this round's kills, judged before any of them change.
            struct RedUse {
                int x, y;
                std::set<Color> dying;
                std::size_t first;
            };
            std::vector<RedUse> reds;
            std::map<int, std::set<Color>> pair_winners;
            for (int y = 0; y < g.n; ++y)
                for (int x = 0; x < g.n; ++x) {
                    if (g.kind[y][x] == 'R') {
                        RedUse use{x, y, {}, 0};
                        bool any = false;
                        for (std::size_t d = first_new; d < doomed.size(); ++d) {
                            bool near = false;
                            for (Point p : doomed[d].cells) near |= touching(p.col, p.row, x, y);
                            if (!near) continue;
                            if (!any) use.first = d;
                            any = true;
                            use.dying.insert(doomed[d].color);
                        }
                        if (any) reds.push_back(use);
                    }
                    if (g.kind[y][x] == 'b' || g.kind[y][x] == 'w') {
                        Color mine = g.kind[y][x] == 'b' ? Color::black : Color::white;
                        for (std::size_t d = first_new; d < doomed.size(); ++d) {
                            if (doomed[d].color == mine) continue;
                            for (Point p : doomed[d].cells)
                                if (touching(p.col, p.row, x, y)) pair_winners[g.pair[y][x]].insert(mine);
                        }
                    }
                }
            std::vector<bool> swallow(reds.size(), false);
            for (std::size_t i = 0; i < reds.size(); ++i) {
                const RedUse& r = reds[i];
                swallow[i] = r.y * g.n + r.x == fresh && r.dying.size() == 1 &&
                             own_chain_sealed(r.x, r.y, *r.dying.begin());
            }
            for (std::size_t i = 0; i < reds.size(); ++i) {
                const RedUse& r = reds[i];
                if (r.dying.size() != 1) continue;
                Color c = *r.dying.begin();
                if (swallow[i]) {
                    g.kind[r.y][r.x] = letter(c);
                    doom[r.y][r.x] = c == Color::black ? 1 : 2;
                    doomed[r.first].cells.push_back({r.x, r.y});
                    events.push_back(event::SuicideAbsorbedRed{{r.x, r.y}, c});
                } else {
                    g.kind[r.y][r.x] = letter(opposite(c));
                    events.push_back(event::RedResolved{{r.x, r.y}, opposite(c)});
                }
            }
            for (auto& [id, winners] : pair_winners) {
                if (winners.size() != 1) continue;
                Color w = *winners.begin();
                for (int y = 0; y < g.n; ++y)
                    for (int x = 0; x < g.n; ++x) {
                        if (g.pair[y][x] != id || (g.kind[y][x] != 'b' && g.kind[y][x] != 'w')) continue;
                        Color side = g.kind[y][x] == 'b' ? Color::black : Color::white;
                        g.kind[y][x] = letter(side == w ? w : opposite(w));
                        g.pair[y][x] = 0;
                    }
                events.push_back(event::EResolved{id, w});
            }
            cands = dying_candidates(true);
        }

        for (auto& d : doomed) {
            for (Point p : d.cells) {
                g.kind[p.row][p.col] = '.';
                g.pair[p.row][p.col] = 0;
            }
            caught[d.color == Color::black ? 1 : 0] += static_cast<int>(d.cells.size());
            events.push_back(event::GroupCaptured{d.color, d.cells, opposite(d.color)});
        }

        std::vector<std::pair<Point, Color>> enclosed;
        for (int y = 0; y < g.n; ++y)
            for (int x = 0; x < g.n; ++x) {
                if (g.kind[y][x] != 'R') continue;
                std::set<char> around;
                for (int y2 = 0; y2 < g.n; ++y2)
                    for (int x2 = 0; x2 < g.n; ++x2)
                        if (touching(x, y, x2, y2)) around.insert(g.kind[y2][x2]);
                if (around.size() == 1 && (*around.begin() == 'B' || *around.begin() == 'W'))
                    enclosed.push_back({{x, y}, *around.begin() == 'B' ? Color::black : Color::white});
            }
        for (auto [p, c] : enclosed) {
            g.kind[p.row][p.col] = letter(c);
            caught[c == Color::black ? 0 : 1] += 1;
            events.push_back(event::RedCaptured{p, c});
            changed = true;
        }
        fresh = -1;
        return changed;
    }
};

}  // namespace naive

inline TurnOutcome oracle_apply_turn(const Board& b, const TurnInput& t) {
    for (Color c : {Color::black, Color::white}) {
        if (auto p = placed_point(t.of(c))) {
            if (!b.in_bounds(*p) || b.at(*p).kind != CellKind::empty)
                throw Error(ErrorCode::invalid_move, std::string(color_name(c)) + " move is not on an empty point");
        }
    }
    auto pb = placed_point(t.black);
    auto pw = placed_point(t.white);
    if (!pb && !pw) return TurnOutcome{b, {}, 0, 0};

    naive::Grid g = naive::from_board(b);
    std::vector<Event> events;
    int fresh = -1;
    if (pb && pw && *pb == *pw) {
        g.kind[pb->row][pb->col] = 'R';
        fresh = pb->row * g.n + pb->col;
        events.push_back(event::RedCreated{*pb});
    } else {
        if (pb) {
            g.kind[pb->row][pb->col] = 'B';
            events.push_back(event::Placed{Color::black, *pb});
        }
        if (pw) {
            g.kind[pw->row][pw->col] = 'W';
            events.push_back(event::Placed{Color::white, *pw});
        }
    }
    naive::Turn turn(std::move(g), fresh);
    while (turn.pass_once()) {
    }
    events.insert(events.end(), turn.events.begin(), turn.events.end());
    return TurnOutcome{naive::to_board(turn.g), std::move(events), turn.caught[0], turn.caught[1]};
}

// Every (black move, white move) pair of Pass or an Empty point.
inline std::vector<TurnInput> enumerate_turns(const Board& b) {
    std::vector<Move> moves{Pass{}};
    for (int idx = 0; idx < b.area(); ++idx)
        if (b.at(idx).kind == CellKind::empty) moves.push_back(Place{b.point(idx)});
    std::vector<TurnInput> out;
    out.reserve(moves.size() * moves.size());
    for (const Move& mb : moves)
        for (const Move& mw : moves) out.push_back(TurnInput{mb, mw});
    return out;
}

struct Mismatch {
    std::uint64_t board_fingerprint;
    TurnInput input;
    std::uint64_t engine_digest;
    std::uint64_t oracle_digest;
    std::string reason;
};

struct OracleReport {
    std::uint64_t cases_checked = 0;
    std::vector<Mismatch> mismatches;

    void merge(const OracleReport& other) {
        cases_checked += other.cases_checked;
        mismatches.insert(mismatches.end(), other.mismatches.begin(), other.mismatches.end());
    }
};

inline std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 0xf];
    return s;
}

inline std::string format_report(const OracleReport& r) {
    std::string out;
    for (const auto& m : r.mismatches) {
        out += "MISMATCH " + hex64(m.board_fingerprint) + " B " + to_string(m.input.black) + " W " +
               to_string(m.input.white) + " engine " + hex64(m.engine_digest) + " oracle " + hex64(m.oracle_digest);
        if (!m.reason.empty()) out += " (" + m.reason + ")";
        out += '\n';
    }
    out += std::to_string(r.cases_checked) + " cases, " + std::to_string(r.mismatches.size()) + " mismatches\n";
    return out;
}

// Compares engine and oracle on one (board, input); also checks colour symmetry
// and the post-turn invariants. Returns the engine outcome.
inline TurnOutcome check_case(const Board& b, const TurnInput& t, OracleReport& report) {
    TurnOutcome mine = apply_turn(b, t);
    TurnOutcome ref = oracle_apply_turn(b, t);
    ++report.cases_checked;
    auto fail = [&](std::string why) {
        report.mismatches.push_back(
            Mismatch{fingerprint(b), t, outcome_digest(mine), outcome_digest(ref), std::move(why)});
    };
    if (outcome_digest(mine) != outcome_digest(ref)) fail("engine/oracle digest");

    TurnOutcome flipped = apply_turn(color_flip(b), swapped(t));
    if (flipped.board != color_flip(mine.board) || flipped.prisoners_black != mine.prisoners_white ||
        flipped.prisoners_white != mine.prisoners_black)
        fail("engine colour symmetry");
    TurnOutcome ref_flipped = oracle_apply_turn(color_flip(b), swapped(t));
    if (ref_flipped.board != color_flip(ref.board) || ref_flipped.prisoners_black != ref.prisoners_white)
        fail("oracle colour symmetry");

    if (auto bad = check_invariants(mine.board)) fail("registry: " + *bad);
    for (const Group& g : compute_groups(mine.board)) {
        if ((g.kind == GroupKind::black || g.kind == GroupKind::white) && liberties(mine.board, g).empty())
            fail("plain group without liberties at " + to_coord(g.stones.front()));
    }
    return mine;
}

// Exhaustive walk of every input sequence up to `depth` turns from an empty
// board. Sequences that reach the same position share its subtree, so each
// distinct (position, input) case is checked once.
inline OracleReport exhaustive_check(int size, int depth) {
    OracleReport report;
    std::unordered_map<std::string, int> explored;  // position -> deepest remaining depth walked
    std::function<void(const Board&, int)> walk = [&](const Board& b, int remaining) {
        if (remaining == 0) return;
        auto [it, fresh] = explored.try_emplace(to_fixture(b), remaining);
        if (!fresh) {
            if (it->second >= remaining) return;
            it->second = remaining;
        }
        for (const TurnInput& t : enumerate_turns(b)) {
            if (!fresh) {
                // already checked at a shallower depth; only extend the walk
                if (is_pass(t.black) && is_pass(t.white)) continue;
                walk(apply_turn(b, t).board, remaining - 1);
                continue;
            }
            TurnOutcome o = check_case(b, t, report);
            if (is_pass(t.black) && is_pass(t.white)) continue;  // game over
            walk(o.board, remaining - 1);
        }
    };
    Board root(size);
    if (depth == 0) {
        // The root alone: a double pass is the only case evaluated.
        check_case(root, TurnInput{}, report);
        return report;
    }
    walk(root, depth);
    return report;
}

// Seeded random playouts of up to `max_turns` turns, `budget` cases in total.
inline OracleReport sampled_check(int size, std::uint64_t seed, std::uint64_t budget, int max_turns = 200) {
    OracleReport report;
    std::mt19937_64 rng(seed);
    while (report.cases_checked < budget) {
        Board b(size);
        for (int turn = 0; turn < max_turns && report.cases_checked < budget; ++turn) {
            std::vector<int> empties;
            for (int idx = 0; idx < b.area(); ++idx)
                if (b.at(idx).kind == CellKind::empty) empties.push_back(idx);
            auto pick = [&]() -> Move {
                // Pass 5% of the time; bias 20% of placements toward a shared point to exercise Reds.
                if (empties.empty() || rng() % 20 == 0) return Pass{};
                return Place{b.point(empties[rng() % empties.size()])};
            };
            TurnInput t{pick(), pick()};
            if (!empties.empty() && rng() % 5 == 0) t.white = t.black;
            if (is_pass(t.black) && is_pass(t.white)) {
                check_case(b, t, report);
                break;
            }
            b = check_case(b, t, report).board;
        }
    }
    return report;
}

inline OracleReport differential_check(int size, int depth, std::uint64_t seed, std::uint64_t budget) {
    if (budget == 0) return exhaustive_check(size, depth);
    return sampled_check(size, seed, budget);
}

}  // namespace sgo::oracle
