#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgo/board.hpp"
#include "sgo/events.hpp"

namespace sgo {

inline void validate_move(const Board& b, const Move& m) {
    auto p = placed_point(m);
    if (!p) return;
    if (!b.in_bounds(*p)) throw Error(ErrorCode::out_of_bounds, "move outside the board");
    if (b.at(*p).kind != CellKind::empty)
        throw Error(ErrorCode::occupied_point, to_coord(*p) + " is occupied");
}

// Connected component of the mutual-kill graph that holds both colors.
struct MutualComponent {
    std::vector<Group> groups;
};

namespace detail {

struct Candidate {
    Color color;
    std::vector<int> stones;  // ascending cell indices
};

inline Group to_group(const Board& b, const Candidate& c) {
    Group g{c.color == Color::black ? GroupKind::black : GroupKind::white, {}, std::nullopt};
    for (int i : c.stones) g.stones.push_back(b.point(i));
    return g;
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

// Components of the mutual-kill graph over zero-liberty plain candidates.
// Black and white candidates are linked when 4-adjacent, when one Red stone
// touches both, or when they touch opposite sides of one entanglement pair.
// Returned as lists of candidate indices, ordered by smallest stone index.
inline std::vector<std::vector<std::size_t>> mutual_components(const Board& b, const std::vector<Candidate>& cands) {
    struct Contacts {
        std::set<int> cells;      // neighbouring cell indices
        std::set<int> reds;
        std::set<int> pairs_of[2];  // pairs touched on their black / white side
    };
    std::vector<Contacts> contacts(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        for (int s : cands[i].stones) {
            for (Point q : neighbors(b.point(s), b.size())) {
                int qi = b.index(q);
                const Cell& c = b.at(qi);
                contacts[i].cells.insert(qi);
                if (c.kind == CellKind::red) contacts[i].reds.insert(qi);
                if (c.kind == CellKind::eblack) contacts[i].pairs_of[0].insert(c.pair);
                if (c.kind == CellKind::ewhite) contacts[i].pairs_of[1].insert(c.pair);
            }
        }
    }
    auto intersects = [](const std::set<int>& x, const std::set<int>& y) {
        auto it = x.begin();
        auto jt = y.begin();
        while (it != x.end() && jt != y.end()) {
            if (*it == *jt) return true;
            if (*it < *jt) ++it;
            else ++jt;
        }
        return false;
    };
    UnionFind uf(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (cands[i].color != Color::black) continue;
        for (std::size_t j = 0; j < cands.size(); ++j) {
            if (cands[j].color != Color::white) continue;
            bool adjacent = std::any_of(cands[j].stones.begin(), cands[j].stones.end(),
                                        [&](int s) { return contacts[i].cells.contains(s); });
            if (adjacent || intersects(contacts[i].reds, contacts[j].reds) ||
                intersects(contacts[i].pairs_of[1], contacts[j].pairs_of[0]))
                uf.unite(i, j);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < cands.size(); ++i) by_root[uf.find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [_, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        return cands[x.front()].stones.front() < cands[y.front()].stones.front();
    });
    return out;
}

class Resolver {
public:
    Resolver(Board& board, std::optional<Point> fresh_red) : b_(board) {
        if (fresh_red) fresh_red_ = b_.index(*fresh_red);
    }

    void run() {
        // Each iteration either removes stones, entangles plain stones or
        // converts a Red; the bound only guards against a logic error.
        for (int guard = 0; guard < 4 * b_.area() + 8; ++guard)
            if (!iterate()) return;
        throw std::logic_error("capture resolution did not reach a fixpoint");
    }

    std::vector<Event> events;
    int prisoners[2] = {0, 0};

private:
    static int slot(Color c) { return c == Color::black ? 0 : 1; }

    // Plain chains formed over live stones with no empty neighbour. With
    // `exempt_capturers`, chains touching a doomed opposite-color stone are
    // skipped: they are killing it and regain liberties on removal.
    std::vector<Candidate> zero_liberty_groups(bool exempt_capturers) const {
        std::vector<Candidate> out;
        std::vector<char> seen(static_cast<std::size_t>(b_.area()), 0);
        for (int idx = 0; idx < b_.area(); ++idx) {
            const Cell& c = b_.at(idx);
            if (!is_plain(c.kind) || seen[idx] || dead_[idx] >= 0) continue;
            Color color = *stone_color(c.kind);
            Candidate cand{color, {}};
            bool has_liberty = false;
            bool capturer = false;
            std::vector<int> stack{idx};
            seen[idx] = 1;
            while (!stack.empty()) {
                int s = stack.back();
                stack.pop_back();
                cand.stones.push_back(s);
                for (Point q : neighbors(b_.point(s), b_.size())) {
                    int qi = b_.index(q);
                    const Cell& n = b_.at(qi);
                    if (n.kind == CellKind::empty) has_liberty = true;
                    if (dead_[qi] == slot(opposite(color))) capturer = true;
                    if (n == c && !seen[qi] && dead_[qi] < 0) {
                        seen[qi] = 1;
                        stack.push_back(qi);
                    }
                }
            }
            if (has_liberty || (exempt_capturers && capturer)) continue;
            std::sort(cand.stones.begin(), cand.stones.end());
            out.push_back(std::move(cand));
        }
        return out;
    }

    // True if `red`, read as a plain `c` stone, leaves its chain of plain `c` stones without liberties.
    bool seals_own_chain(int red, Color c) const {
        std::vector<char> seen(static_cast<std::size_t>(b_.area()), 0);
        std::vector<int> stack{red};
        seen[red] = 1;
        while (!stack.empty()) {
            int s = stack.back();
            stack.pop_back();
            for (Point q : neighbors(b_.point(s), b_.size())) {
                int qi = b_.index(q);
                if (seen[qi]) continue;
                const Cell& n = b_.at(qi);
                if (n.kind == CellKind::empty) return false;
                if (n == plain(c)) {
                    seen[qi] = 1;
                    stack.push_back(qi);
                }
            }
        }
        return true;
    }

    void entangle(const std::vector<Candidate>& cands, const std::vector<std::size_t>& members) {
        int id = b_.fresh_pair_id();
        std::vector<Point> blacks, whites;
        for (std::size_t m : members)
            for (int s : cands[m].stones)
                (cands[m].color == Color::black ? blacks : whites).push_back(b_.point(s));
        b_.entangle(id, blacks, whites);
        const auto& entry = b_.registry().at(id);
        events.push_back(event::EntangleCreated{id, entry.black, entry.white});
    }

    struct Kill {
        Color color;
        std::vector<int> stones;
    };

    // One round: classify candidates, commit kills, resolve the markers they used.
    bool round(const std::vector<Candidate>& cands, std::vector<Kill>& kills, bool& changed) {
        std::vector<std::size_t> killed;
        for (const auto& comp : mutual_components(b_, cands)) {
            bool mixed = std::any_of(comp.begin(), comp.end(),
                                     [&](std::size_t i) { return cands[i].color != cands[comp.front()].color; });
            if (mixed) {
                entangle(cands, comp);
                changed = true;
            } else {
                killed.insert(killed.end(), comp.begin(), comp.end());
            }
        }
        if (killed.empty()) return false;
        changed = true;

        std::map<int, std::set<int>> red_uses;   // red cell -> dying colors
        std::map<int, std::set<int>> pair_uses;  // pair -> winning colors
        std::map<int, std::size_t> red_first_kill;
        for (std::size_t k : killed) {
            const Candidate& g = cands[k];
            std::size_t kill_index = kills.size();
            kills.push_back(Kill{g.color, g.stones});
            for (int s : g.stones) dead_[s] = static_cast<signed char>(slot(g.color));
            for (int s : g.stones) {
                for (Point q : neighbors(b_.point(s), b_.size())) {
                    int qi = b_.index(q);
                    const Cell& n = b_.at(qi);
                    if (n.kind == CellKind::red) {
                        red_uses[qi].insert(slot(g.color));
                        red_first_kill.try_emplace(qi, kill_index);
                    } else if (is_entangled(n.kind) && *stone_color(n.kind) == opposite(g.color)) {
                        pair_uses[n.pair].insert(slot(opposite(g.color)));
                    }
                }
            }
        }

        // Decide absorption against the board as it stands before any conversion.
        std::set<int> absorbed;
        for (const auto& [red, dying] : red_uses) {
            if (red != fresh_red_ || dying.size() != 1) continue;
            if (seals_own_chain(red, *dying.begin() == 0 ? Color::black : Color::white)) absorbed.insert(red);
        }
        for (const auto& [red, dying] : red_uses) {
            if (dying.size() != 1) continue;  // contested marker stays Red
            Color c = *dying.begin() == 0 ? Color::black : Color::white;
            Point p = b_.point(red);
            if (absorbed.contains(red)) {
                b_.set(p, plain(c));
                dead_[red] = static_cast<signed char>(slot(c));
                kills[red_first_kill.at(red)].stones.push_back(red);
                events.push_back(event::SuicideAbsorbedRed{p, c});
            } else {
                b_.set(p, plain(opposite(c)));
                events.push_back(event::RedResolved{p, opposite(c)});
            }
        }
        for (const auto& [pair, winners] : pair_uses) {
            if (winners.size() != 1) continue;
            Color w = *winners.begin() == 0 ? Color::black : Color::white;
            b_.dissolve(pair, w);
            events.push_back(event::EResolved{pair, w});
        }
        return true;
    }

    bool iterate() {
        bool changed = false;
        dead_.assign(static_cast<std::size_t>(b_.area()), -1);
        std::vector<Kill> kills;
        auto cands = zero_liberty_groups(false);
        while (!cands.empty() && round(cands, kills, changed)) cands = zero_liberty_groups(true);

        for (auto& k : kills) {
            std::sort(k.stones.begin(), k.stones.end());
            std::vector<Point> pts;
            for (int s : k.stones) {
                pts.push_back(b_.point(s));
                b_.set(b_.point(s), kEmpty);
            }
            prisoners[slot(opposite(k.color))] += static_cast<int>(pts.size());
            events.push_back(event::GroupCaptured{k.color, std::move(pts), opposite(k.color)});
        }

        // Enclosed Reds, judged on one snapshot.
        std::vector<std::pair<int, Color>> captured;
        for (int idx = 0; idx < b_.area(); ++idx) {
            if (b_.at(idx).kind != CellKind::red) continue;
            std::optional<CellKind> only;
            bool enclosed = true;
            for (Point q : neighbors(b_.point(idx), b_.size())) {
                CellKind k = b_.at(q).kind;
                if (!is_plain(k) || (only && *only != k)) {
                    enclosed = false;
                    break;
                }
                only = k;
            }
            if (enclosed && only) captured.emplace_back(idx, *stone_color(*only));
        }
        for (auto [idx, by] : captured) {
            b_.set(b_.point(idx), plain(by));
            prisoners[slot(by)] += 1;
            events.push_back(event::RedCaptured{b_.point(idx), by});
            changed = true;
        }
        fresh_red_ = -1;
        return changed;
    }

    Board& b_;
    int fresh_red_ = -1;
    std::vector<signed char> dead_;  // -1 live, else slot of the dying color
};

}  // namespace detail

// Groups are assumed to be zero-liberty plain groups of `b`.
inline std::vector<MutualComponent> classify_mutual(const std::vector<Group>& candidates, const Board& b) {
    std::vector<detail::Candidate> cands;
    for (const Group& g : candidates) {
        detail::Candidate c{g.kind == GroupKind::black ? Color::black : Color::white, {}};
        for (Point p : g.stones) c.stones.push_back(b.index(p));
        std::sort(c.stones.begin(), c.stones.end());
        cands.push_back(std::move(c));
    }
    std::vector<MutualComponent> out;
    for (const auto& comp : detail::mutual_components(b, cands)) {
        bool mixed = std::any_of(comp.begin(), comp.end(),
                                 [&](std::size_t i) { return cands[i].color != cands[comp.front()].color; });
        if (!mixed) continue;
        MutualComponent mc;
        for (std::size_t i : comp) mc.groups.push_back(detail::to_group(b, cands[i]));
        out.push_back(std::move(mc));
    }
    return out;
}

struct Placements {
    std::optional<Point> black;
    std::optional<Point> white;
    std::optional<Point> red;  // both players chose this point
};

// Runs the capture fixpoint on a board whose placements are already written.
inline TurnOutcome resolve_captures(Board b, const Placements& placed) {
    detail::Resolver r(b, placed.red);
    r.run();
    return TurnOutcome{std::move(b), std::move(r.events), r.prisoners[0], r.prisoners[1]};
}

inline TurnOutcome apply_turn(const Board& b, const TurnInput& t) {
    std::string bad;
    for (Color c : {Color::black, Color::white}) {
        try {
            validate_move(b, t.of(c));
        } catch (const Error& e) {
            bad += (bad.empty() ? "" : "; ") + std::string(color_name(c)) + ": " + e.what();
        }
    }
    if (!bad.empty()) throw Error(ErrorCode::invalid_move, "invalid move (" + bad + ")");
    if (is_pass(t.black) && is_pass(t.white)) return TurnOutcome{b, {}, 0, 0};

    Board work = b;
    std::vector<Event> placed_events;
    Placements placed;
    auto pb = placed_point(t.black);
    auto pw = placed_point(t.white);
    if (pb && pw && *pb == *pw) {
        work.set(*pb, kRed);
        placed_events.push_back(event::RedCreated{*pb});
        placed.red = *pb;
    } else {
        if (pb) {
            work.set(*pb, plain(Color::black));
            placed_events.push_back(event::Placed{Color::black, *pb});
            placed.black = pb;
        }
        if (pw) {
            work.set(*pw, plain(Color::white));
            placed_events.push_back(event::Placed{Color::white, *pw});
            placed.white = pw;
        }
    }
    TurnOutcome out = resolve_captures(std::move(work), placed);
    out.events.insert(out.events.begin(), placed_events.begin(), placed_events.end());
    return out;
}

}  // namespace sgo
