#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "sgo/board.hpp"
#include "test_support.hpp"

using namespace sgo;
using sgo::testing::at;
using sgo::testing::fixture;

namespace {

std::set<Point> as_set(const std::vector<Point>& v) { return {v.begin(), v.end()}; }

// Partition by transitive closure of "same plain kind and adjacent", Reds
// alone, e-stones by (kind, pair). Quadratic-in-cells, no flood fill.
std::set<std::set<Point>> naive_partition(const Board& b) {
    const int n = b.area();
    std::vector<std::vector<char>> same(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) {
        const Cell& ci = b.at(i);
        if (ci.kind == CellKind::empty) continue;
        same[i][i] = 1;
        for (int j = 0; j < n; ++j) {
            const Cell& cj = b.at(j);
            if (i == j || cj.kind == CellKind::empty) continue;
            Point p = b.point(i), q = b.point(j);
            bool adjacent = std::abs(p.col - q.col) + std::abs(p.row - q.row) == 1;
            if (is_plain(ci.kind) && ci == cj && adjacent) same[i][j] = 1;
            if (is_entangled(ci.kind) && ci == cj) same[i][j] = 1;
        }
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (same[i][k] && same[k][j]) same[i][j] = 1;
    std::set<std::set<Point>> out;
    for (int i = 0; i < n; ++i) {
        if (b.at(i).kind == CellKind::empty) continue;
        std::set<Point> cls;
        for (int j = 0; j < n; ++j)
            if (same[i][j]) cls.insert(b.point(j));
        out.insert(cls);
    }
    return out;
}

Board random_fill(std::mt19937_64& rng, int size) {
    Board b(size);
    std::vector<Point> eb, ew;
    for (int idx = 0; idx < b.area(); ++idx) {
        switch (rng() % 6) {
            case 1: b.set(b.point(idx), plain(Color::black)); break;
            case 2: b.set(b.point(idx), plain(Color::white)); break;
            case 3: b.set(b.point(idx), kRed); break;
            case 4: (rng() % 2 ? eb : ew).push_back(b.point(idx)); break;
            default: break;
        }
    }
    if (!eb.empty() && !ew.empty()) b.entangle(1, eb, ew);
    return b;
}

}  // namespace

TEST(Board, MakeBoardIsEmpty) {
    for (int size : {7, 19}) {
        Board b = make_board(size);
        EXPECT_EQ(b.size(), size);
        EXPECT_EQ(count_kind(b, CellKind::empty), size * size);
        EXPECT_TRUE(b.registry().empty());
    }
}

TEST(Board, MakeBoardRejectsBadSizes) {
    for (int size : {1, 0, -3, 26}) {
        try {
            make_board(size);
            FAIL() << size;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::invalid_size);
        }
    }
    EXPECT_NO_THROW(make_board(2));
    EXPECT_NO_THROW(make_board(25));
}

TEST(Board, Neighbors) {
    EXPECT_EQ(as_set(neighbors({0, 0}, 7)), (std::set<Point>{{1, 0}, {0, 1}}));
    EXPECT_EQ(neighbors({3, 0}, 7).size(), 3u);
    EXPECT_EQ(neighbors({3, 3}, 7).size(), 4u);
    EXPECT_EQ(neighbors({6, 6}, 7).size(), 2u);
}

TEST(Board, CoordinatesSkipI) {
    EXPECT_EQ(to_coord({8, 0}), "J1");
    EXPECT_EQ(*parse_coord("J1", 19), (Point{8, 0}));
    EXPECT_FALSE(parse_coord("I1", 19));
    EXPECT_FALSE(parse_coord("H8", 7));
    EXPECT_FALSE(parse_coord("A0", 7));
    EXPECT_EQ(*parse_coord("c4", 7), at("C4"));
}

TEST(Groups, AdjacentBlackStonesFormOneGroup) {
    Board b = fixture("diagram1_setup.txt");
    auto groups = compute_groups(b);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [](const Group& g) { return g.kind == GroupKind::black && g.stones.front() == at("C5"); });
    ASSERT_NE(it, groups.end());
    EXPECT_EQ(as_set(it->stones), (std::set<Point>{at("C5"), at("C6")}));
}

TEST(Groups, AdjacentRedsStaySingletons) {
    Board b(7);
    b.set(at("C4"), kRed);
    b.set(at("D4"), kRed);
    auto groups = compute_groups(b);
    ASSERT_EQ(groups.size(), 2u);
    for (const auto& g : groups) {
        EXPECT_EQ(g.kind, GroupKind::red);
        EXPECT_EQ(g.stones.size(), 1u);
    }
}

TEST(Groups, EntangledStonesGroupByPairNotConnectivity) {
    Board b(7);
    b.entangle(3, {at("A1"), at("G7")}, {at("D4")});
    auto groups = compute_groups(b);
    ASSERT_EQ(groups.size(), 2u);
    EXPECT_EQ(groups[0].kind, GroupKind::eblack);
    EXPECT_EQ(groups[0].pair, 3);
    EXPECT_EQ(groups[0].stones.size(), 2u);
}

TEST(Groups, PlainStoneNextToEStoneDoesNotJoin) {
    Board b(7);
    b.entangle(1, {at("D4")}, {at("A1")});
    b.set(at("D5"), plain(Color::black));
    EXPECT_EQ(compute_groups(b).size(), 3u);
}

TEST(Groups, PartitionMatchesNaiveClosureOnRandomFills) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        Board b = random_fill(rng, 5);
        ASSERT_FALSE(check_invariants(b)) << *check_invariants(b);
        std::set<std::set<Point>> got;
        for (const auto& g : compute_groups(b)) got.insert(as_set(g.stones));
        EXPECT_EQ(got, naive_partition(b)) << to_fixture(b);
    }
}

TEST(Liberties, SealedBlackGroupInDiagramOne) {
    Board b = fixture("diagram1.txt");
    Group g{GroupKind::black, {at("C5"), at("C6")}, std::nullopt};
    EXPECT_EQ(as_set(liberties(b, g)), std::set<Point>{at("C7")});
}

TEST(Liberties, LoneStoneHasFour) {
    Board b(7);
    b.set(at("D4"), plain(Color::black));
    EXPECT_EQ(liberties(b, compute_groups(b).front()).size(), 4u);
}

TEST(Liberties, EntangledWhiteGroupAfterExampleTwoTurnOne) {
    Board b = fixture("diagram5_turn1.txt");
    auto groups = compute_groups(b);
    auto it = std::find_if(groups.begin(), groups.end(), [](const Group& g) { return g.kind == GroupKind::ewhite; });
    ASSERT_NE(it, groups.end());
    EXPECT_EQ(as_set(it->stones), (std::set<Point>{at("D3"), at("D5"), at("E3"), at("E4"), at("E5")}));
    EXPECT_TRUE(liberties(b, *it).empty());
}

TEST(Liberties, OnlyEmptyNeighboursCount) {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Board b = random_fill(rng, 6);
        for (const auto& g : compute_groups(b)) {
            for (Point p : liberties(b, g)) {
                EXPECT_EQ(b.at(p).kind, CellKind::empty);
                bool adjacent = false;
                for (Point s : g.stones)
                    for (Point q : neighbors(s, b.size())) adjacent |= q == p;
                EXPECT_TRUE(adjacent);
            }
        }
    }
}

TEST(ColorFlip, IsAnInvolution) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        Board b = random_fill(rng, 5);
        EXPECT_EQ(color_flip(color_flip(b)), b);
        EXPECT_FALSE(check_invariants(color_flip(b)));
    }
}

TEST(ColorFlip, RedBoardIsFixed) {
    Board b(3);
    for (int idx = 0; idx < b.area(); ++idx) b.set(b.point(idx), kRed);
    EXPECT_EQ(color_flip(b), b);
}

TEST(ColorFlip, DiagramFiveRecolours) {
    Board f = color_flip(fixture("diagram5_turn1.txt"));
    EXPECT_EQ(count_kind(f, CellKind::ewhite), 1);
    EXPECT_EQ(f.at(at("D4")), entangled(Color::white, 1));
    EXPECT_EQ(count_kind(f, CellKind::eblack), 5);
    EXPECT_EQ(f.at(at("C4")), plain(Color::black));
    EXPECT_EQ(f.at(at("E2")), kRed);
}

TEST(ColorFlip, CommutesWithGrouping) {
    std::mt19937_64 rng(77);
    auto relabel = [](GroupKind k) {
        switch (k) {
            case GroupKind::black: return GroupKind::white;
            case GroupKind::white: return GroupKind::black;
            case GroupKind::eblack: return GroupKind::ewhite;
            case GroupKind::ewhite: return GroupKind::eblack;
            default: return k;
        }
    };
    for (int trial = 0; trial < 100; ++trial) {
        Board b = random_fill(rng, 5);
        auto direct = compute_groups(b);
        for (auto& g : direct) g.kind = relabel(g.kind);
        EXPECT_EQ(direct, compute_groups(color_flip(b)));
    }
}

TEST(Registry, OverwritingLastEStoneOfASideDissolvesPair) {
    Board b(5);
    b.entangle(1, {at("A1", 5)}, {at("B1", 5), at("C1", 5)});
    b.set(at("A1", 5), kEmpty);
    EXPECT_TRUE(b.registry().empty());
    EXPECT_EQ(b.at(at("B1", 5)), plain(Color::white));
    EXPECT_FALSE(check_invariants(b));
}

TEST(Registry, FreshIdFillsGaps) {
    Board b(5);
    EXPECT_EQ(b.fresh_pair_id(), 1);
    b.entangle(1, {at("A1", 5)}, {at("B1", 5)});
    b.entangle(3, {at("A3", 5)}, {at("B3", 5)});
    EXPECT_EQ(b.fresh_pair_id(), 2);
}

TEST(Fixture, RoundTripsThroughParser) {
    Board b = fixture("diagram7.txt");
    EXPECT_EQ(parse_diagram(to_fixture(b)), b);
    EXPECT_EQ(to_fixture(b), sgo::testing::fixture_text("diagram7.txt"));
}
