#include <stdexcept>

#include "alpha/map_gen.hpp"
#include "alpha/static_features.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace alpha;

namespace {

int oracle_dist(const GridMap& m, Coord a, Coord b) {
    return oracle::bfs_grid4(m, a)[size_t(b.y) * m.width() + b.x];
}

}  // namespace

TEST_CASE("detour features vanish on an obstacle-free map") {
    const GridMap m = GridMap::open(8, 8);
    CHECK(node_accessibility(m, {1, 1}, {6, 3}) == 0);
    CHECK(node_accessibility(m, {2, 2}, {2, 2}) == 0);
    CHECK(detour_to_goal(m, {0, 7}, {5, 5}) == 0);
    CHECK(off_route_degree(m, {0, 0}, {7, 7}, {3, 4}) == 0);
}

TEST_CASE("node_accessibility equals BFS minus manhattan around a wall stub") {
    const GridMap m = parse_map(
        ".....\n"
        "..#..\n"
        "..#..\n"
        "..#..\n"
        ".....\n");
    const Coord agent{1, 2}, node{3, 2};
    const int expect = oracle_dist(m, agent, node) - manhattan(agent, node);
    CHECK(expect > 0);
    CHECK(node_accessibility(m, agent, node) == expect);
    CHECK(detour_to_goal(m, agent, node) == expect);  // same formula, goal in place of agent
}

TEST_CASE("off_route_degree of a dead-end node two moves off the path") {
    const GridMap m = parse_map(
        ".......\n"
        "###.###\n"
        "###.###\n");
    const Coord agent{0, 0}, goal{6, 0}, node{3, 2};
    CHECK(off_route_degree(m, agent, goal, node) == 4);  // two in, two out
    CHECK(off_route_degree(m, agent, goal, {3, 0}) == 0);  // on the shortest path
    CHECK(off_route_degree(m, agent, goal, agent) == 0);
    CHECK(off_route_degree(m, agent, goal, goal) == 0);
}

TEST_CASE("unreachable pairs raise and blocked cells are rejected") {
    const GridMap m = parse_map("..#..\n..#..\n..#..\n");
    CHECK_THROWS_AS(node_accessibility(m, {0, 0}, {4, 0}), std::runtime_error);
    CHECK_THROWS_AS(node_accessibility(m, {2, 0}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(off_route_degree(m, {0, 0}, {1, 0}, {5, 0}), std::invalid_argument);
}

TEST_CASE("build_static_graph shape and ego/goal coordinates") {
    const GridMap m = GridMap::open(10, 10);
    const std::vector<MapNode> nodes = {{{2, 2}, NodeKind::leaf},
                                        {{7, 3}, NodeKind::branch},
                                        {{4, 8}, NodeKind::leaf}};
    const StaticGraphObs obs = build_static_graph(m, nodes, {0, 0}, {9, 9});
    REQUIRE(obs.rows.size() == 5);
    CHECK(obs.ego_index == 3);
    CHECK(obs.goal_index == 4);
    CHECK(obs.unreachable_excluded == 0);

    for (const auto& r : obs.rows) {
        CHECK(r.d_na == 0);  // obstacle-free: every feature vanishes
        CHECK(r.d_dg == 0);
        CHECK(r.d_od == 0);
        CHECK(r.x >= 0);
        CHECK(r.x <= 1);
        CHECK(r.y >= 0);
        CHECK(r.y <= 1);
    }
    CHECK(obs.rows[size_t(obs.ego_index)].x == doctest::Approx(0.0));
    CHECK(obs.rows[size_t(obs.goal_index)].x == doctest::Approx(1.0));
}

TEST_CASE("ego and goal rows keep their zero patterns on obstacle maps") {
    RoomGenParams p;
    p.seed = 33;
    const GridMap m = generate_room_map(16, 16, p);
    std::vector<Coord> free;
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (m.is_free({x, y})) free.push_back({x, y});
    const Coord agent = free.front(), goal = free.back();
    const StaticGraphObs obs = build_static_graph(m, {}, agent, goal);
    REQUIRE(obs.rows.size() == 2);
    CHECK(obs.rows[size_t(obs.ego_index)].d_na == 0);
    CHECK(obs.rows[size_t(obs.ego_index)].d_od == 0);
    CHECK(obs.rows[size_t(obs.goal_index)].d_dg == 0);
    CHECK(obs.rows[size_t(obs.goal_index)].d_od == 0);
    const int d = oracle_dist(m, agent, goal);
    CHECK(obs.rows[size_t(obs.ego_index)].d_dg == d - manhattan(agent, goal));
    CHECK(obs.rows[size_t(obs.goal_index)].d_na == d - manhattan(agent, goal));
}

TEST_CASE("dead-end node has positive d_od while on-path nodes have zero") {
    const GridMap m = parse_map(
        ".......\n"
        "###.###\n"
        "###.###\n");
    const std::vector<MapNode> nodes = {{{3, 2}, NodeKind::leaf}, {{3, 0}, NodeKind::branch}};
    const StaticGraphObs obs = build_static_graph(m, nodes, {0, 0}, {6, 0});
    REQUIRE(obs.rows.size() == 4);
    CHECK(obs.rows[0].d_od == 4);
    CHECK(obs.rows[1].d_od == 0);
}

TEST_CASE("oracle equivalence over random maps") {
    Rng rng(515);
    for (int trial = 0; trial < 25; ++trial) {
        const GridMap m =
            generate_random_map(8 + rng.uniform_int(0, 12), 8 + rng.uniform_int(0, 12),
                                0.15 + 0.25 * rng.uniform_real(), rng.next_u64());
        std::vector<Coord> free;
        for (int y = 0; y < m.height(); ++y)
            for (int x = 0; x < m.width(); ++x)
                if (m.is_free({x, y})) free.push_back({x, y});
        const Coord agent = free[size_t(rng.uniform_int(0, int(free.size()) - 1))];
        const Coord goal = free[size_t(rng.uniform_int(0, int(free.size()) - 1))];

        std::vector<MapNode> nodes;
        for (int k = 0; k < 12; ++k)
            nodes.push_back(
                {free[size_t(rng.uniform_int(0, int(free.size()) - 1))], NodeKind::leaf});

        const StaticGraphObs obs = build_static_graph(m, nodes, agent, goal);
        REQUIRE(obs.rows.size() == nodes.size() + 2);

        const auto da = oracle::bfs_grid4(m, agent);
        const auto dg = oracle::bfs_grid4(m, goal);
        const int ag = da[size_t(goal.y) * m.width() + goal.x];
        for (size_t i = 0; i < nodes.size(); ++i) {
            const Coord n = nodes[i].pos;
            const int a = da[size_t(n.y) * m.width() + n.x];
            const int g = dg[size_t(n.y) * m.width() + n.x];
            CHECK(obs.rows[i].d_na == a - manhattan(agent, n));
            CHECK(obs.rows[i].d_dg == g - manhattan(goal, n));
            CHECK(obs.rows[i].d_od == a + g - ag);
            CHECK(obs.rows[i].d_na >= 0);
            CHECK(obs.rows[i].d_dg >= 0);
            CHECK(obs.rows[i].d_od >= 0);
        }
    }
}

TEST_CASE("translation invariance of the detour features") {
    const GridMap base = parse_map(
        ".....\n"
        ".##..\n"
        ".....\n"
        ".....\n");
    // same obstacles shifted one cell right and down inside a larger map
    const GridMap shifted = parse_map(
        ".......\n"
        "..##...\n"
        ".......\n"
        ".......\n"
        ".......\n");
    const Coord agent{0, 0}, goal{4, 2}, node{3, 3};
    const Coord d{1, 1};
    CHECK(node_accessibility(base, agent, node) ==
          node_accessibility(shifted, {agent.x + d.x, agent.y + d.y},
                             {node.x + d.x, node.y + d.y}));
    CHECK(off_route_degree(base, agent, goal, node) ==
          off_route_degree(shifted, {agent.x + d.x, agent.y + d.y}, {goal.x + d.x, goal.y + d.y},
                           {node.x + d.x, node.y + d.y}));
}

TEST_CASE("unreachable map nodes are excluded with a count") {
    const GridMap m = parse_map(
        "..#..\n"
        "..#..\n"
        "..#..\n");
    const std::vector<MapNode> nodes = {{{0, 0}, NodeKind::leaf},
                                        {{4, 0}, NodeKind::leaf},
                                        {{4, 2}, NodeKind::leaf}};
    const StaticGraphObs obs = build_static_graph(m, nodes, {0, 1}, {1, 1});
    CHECK(obs.unreachable_excluded == 2);
    REQUIRE(obs.rows.size() == 3);  // one reachable node + ego + goal
}
