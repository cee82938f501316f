#include <stdexcept>

#include "alpha/map_gen.hpp"
#include "alpha/pathfind.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace alpha;

namespace {

PixelMask mask_from_text(const std::string& text) {
    const GridMap m = parse_map(text);
    PixelMask p;
    p.width = m.width();
    p.height = m.height();
    p.mask.resize(m.cells().size());
    // '#' marks set pixels here so line drawings read naturally.
    for (size_t i = 0; i < m.cells().size(); ++i) p.mask[i] = m.cells()[i] ? 1 : 0;
    return p;
}

bool is_valid_grid_path(const GridMap& m, const Path& p, Coord s, Coord g) {
    if (p.cells.empty() || p.cells.front() != s || p.cells.back() != g) return false;
    for (size_t i = 0; i < p.cells.size(); ++i) {
        if (!m.is_free(p.cells[i])) return false;
        if (i > 0 && manhattan(p.cells[i - 1], p.cells[i]) != 1) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("manhattan distance") {
    CHECK(manhattan({0, 0}, {3, 4}) == 7);
    CHECK(manhattan({2, 2}, {2, 2}) == 0);
    CHECK(manhattan({5, 1}, {1, 5}) == 8);
}

TEST_CASE("astar_grid4 on an empty map equals manhattan") {
    const GridMap m = GridMap::open(5, 5);
    const auto p = astar_grid4(m, {0, 0}, {4, 4});
    REQUIRE(p.has_value());
    CHECK(p->length() == 8);
    CHECK(is_valid_grid_path(m, *p, {0, 0}, {4, 4}));
}

TEST_CASE("astar_grid4 start equals goal") {
    const GridMap m = GridMap::open(4, 4);
    const auto p = astar_grid4(m, {2, 1}, {2, 1});
    REQUIRE(p.has_value());
    CHECK(p->length() == 0);
    CHECK(p->cells.size() == 1);
}

TEST_CASE("astar_grid4 full wall means unreachable") {
    const GridMap m = parse_map(
        "...#...\n"
        "...#...\n"
        "...#...\n"
        "...#...\n");
    CHECK(oracle::bfs_grid4(m, {0, 0})[size_t(0) * 7 + 6] == -1);
    CHECK_FALSE(astar_grid4(m, {0, 0}, {6, 0}).has_value());
}

TEST_CASE("astar_grid4 endpoint validation") {
    const GridMap m = parse_map("..#\n...\n...\n");
    CHECK_THROWS_AS(astar_grid4(m, {2, 0}, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(astar_grid4(m, {0, 0}, {3, 0}), std::invalid_argument);
}

TEST_CASE("astar_grid4 optimality against BFS oracle on random maps") {
    Rng rng(2024);
    int checked = 0;
    while (checked < 1000) {
        const GridMap m =
            generate_random_map(8 + rng.uniform_int(0, 12), 8 + rng.uniform_int(0, 12),
                                0.1 + 0.3 * rng.uniform_real(), rng.next_u64());
        std::vector<Coord> free;
        for (int y = 0; y < m.height(); ++y)
            for (int x = 0; x < m.width(); ++x)
                if (m.is_free({x, y})) free.push_back({x, y});
        for (int k = 0; k < 10 && checked < 1000; ++k, ++checked) {
            const Coord s = free[size_t(rng.uniform_int(0, int(free.size()) - 1))];
            const Coord g = free[size_t(rng.uniform_int(0, int(free.size()) - 1))];
            const auto dist = oracle::bfs_grid4(m, s);
            const auto p = astar_grid4(m, s, g);
            const int expect = dist[size_t(g.y) * m.width() + g.x];
            if (expect < 0)
                CHECK_FALSE(p.has_value());
            else {
                REQUIRE(p.has_value());
                CHECK(p->length() == expect);
                CHECK(is_valid_grid_path(m, *p, s, g));
            }
        }
    }
}

TEST_CASE("astar_grid4 symmetry, triangle inequality, determinism") {
    const GridMap m = generate_random_map(15, 15, 0.25, 42);
    std::vector<Coord> free;
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            if (m.is_free({x, y})) free.push_back({x, y});
    Rng rng(7);
    for (int k = 0; k < 50; ++k) {
        const Coord a = free[size_t(rng.uniform_int(0, int(free.size()) - 1))];
        const Coord b = free[size_t(rng.uniform_int(0, int(free.size()) - 1))];
        const Coord c = free[size_t(rng.uniform_int(0, int(free.size()) - 1))];
        const auto ab = astar_grid4(m, a, b);
        const auto ba = astar_grid4(m, b, a);
        REQUIRE(ab.has_value());
        REQUIRE(ba.has_value());
        CHECK(ab->length() == ba->length());
        const auto ac = astar_grid4(m, a, c);
        const auto bc = astar_grid4(m, b, c);
        CHECK(ac->length() <= ab->length() + bc->length());
        // byte-for-byte repeatability
        const auto ab2 = astar_grid4(m, a, b);
        CHECK(ab->cells == ab2->cells);
    }
}

TEST_CASE("astar_skeleton8 straight line") {
    const PixelMask line = mask_from_text("#####\n");
    const auto p = astar_skeleton8(line, {0, 0}, {4, 0});
    REQUIRE(p.has_value());
    CHECK(p->length() == 4);

    const auto self = astar_skeleton8(line, {2, 0}, {2, 0});
    REQUIRE(self.has_value());
    CHECK(self->length() == 0);
}

TEST_CASE("astar_skeleton8 diagonal moves cost one") {
    const PixelMask diag = mask_from_text(
        "#....\n"
        ".#...\n"
        "..#..\n"
        "...#.\n"
        "....#\n");
    const auto p = astar_skeleton8(diag, {0, 0}, {4, 4});
    REQUIRE(p.has_value());
    CHECK(p->length() == 4);
}

TEST_CASE("astar_skeleton8 disjoint components and validation") {
    const PixelMask two = mask_from_text(
        "###..\n"
        ".....\n"
        "..###\n");
    CHECK_FALSE(astar_skeleton8(two, {0, 0}, {4, 2}).has_value());
    CHECK_THROWS_AS(astar_skeleton8(two, {0, 1}, {0, 0}), std::invalid_argument);
}

TEST_CASE("bfs_dist_field matches oracle") {
    const GridMap m = generate_random_map(18, 12, 0.3, 11);
    Coord src{-1, -1};
    for (int y = 0; y < m.height() && src.x < 0; ++y)
        for (int x = 0; x < m.width() && src.x < 0; ++x)
            if (m.is_free({x, y})) src = {x, y};
    CHECK(bfs_dist_field(m, src) == oracle::bfs_grid4(m, src));
}
