#include "alpha/pathfind.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <stdexcept>

namespace alpha {

namespace {

constexpr int kDirs4[4][2] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
// {dx, dy}, ordered by (dy, dx).
constexpr int kDirs8[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                              {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

struct OpenEntry {
    int f;
    int y;
    int x;
    uint64_t seq;
};
struct OpenOrder {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.y != b.y) return a.y > b.y;
        if (a.x != b.x) return a.x > b.x;
        return a.seq > b.seq;
    }
};

template <typename FreeFn, typename NeighborsFn, typename HeurFn>
std::optional<Path> astar_impl(int width, int height, Coord start, Coord goal, FreeFn is_free,
                               NeighborsFn for_each_neighbor, HeurFn heuristic) {
    const size_t n = size_t(width) * height;
    std::vector<int> g(n, -1);
    std::vector<int> parent(n, -1);
    std::vector<uint8_t> closed(n, 0);
    auto idx = [&](Coord c) { return size_t(c.y) * width + c.x; };

    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
    uint64_t seq = 0;
    g[idx(start)] = 0;
    open.push({heuristic(start), start.y, start.x, seq++});

    while (!open.empty()) {
        const OpenEntry e = open.top();
        open.pop();
        const Coord c{e.x, e.y};
        const size_t ci = idx(c);
        if (closed[ci]) continue;
        if (e.f != g[ci] + heuristic(c)) continue;  // stale entry
        closed[ci] = 1;
        if (c == goal) {
            Path path;
            for (int i = int(ci); i >= 0; i = parent[i])
                path.cells.push_back({int(i % width), int(i / width)});
            std::reverse(path.cells.begin(), path.cells.end());
            return path;
        }
        for_each_neighbor(c, [&](Coord nb) {
            if (!is_free(nb)) return;
            const size_t ni = idx(nb);
            if (closed[ni]) return;
            const int ng = g[ci] + 1;
            if (g[ni] < 0 || ng < g[ni]) {
                g[ni] = ng;
                parent[ni] = int(ci);
                open.push({ng + heuristic(nb), nb.y, nb.x, seq++});
            }
        });
    }
    return std::nullopt;
}

}  // namespace

int PixelMask::count() const {
    return int(std::count_if(mask.begin(), mask.end(), [](uint8_t v) { return v != 0; }));
}

std::optional<Path> astar_grid4(const GridMap& map, Coord start, Coord goal) {
    if (!map.in_bounds(start) || !map.in_bounds(goal))
        throw std::invalid_argument("astar_grid4: endpoint out of bounds");
    if (!map.is_free(start) || !map.is_free(goal))
        throw std::invalid_argument("astar_grid4: endpoint on an obstacle");
    return astar_impl(
        map.width(), map.height(), start, goal,
        [&](Coord c) { return map.in_bounds(c) && map.is_free(c); },
        [&](Coord c, auto&& fn) {
            for (auto& d : kDirs4) fn(Coord{c.x + d[0], c.y + d[1]});
        },
        [&](Coord c) { return manhattan(c, goal); });
}

std::optional<Path> astar_skeleton8(const PixelMask& skeleton, Coord start, Coord goal) {
    if (!skeleton.test(start) || !skeleton.test(goal))
        throw std::invalid_argument("astar_skeleton8: endpoint not on the skeleton");
    return astar_impl(
        skeleton.width, skeleton.height, start, goal, [&](Coord c) { return skeleton.test(c); },
        [&](Coord c, auto&& fn) {
            for (auto& d : kDirs8) fn(Coord{c.x + d[0], c.y + d[1]});
        },
        [&](Coord c) { return chebyshev(c, goal); });
}

std::vector<int> bfs_dist_field(const GridMap& map, Coord source) {
    if (!map.in_bounds(source) || !map.is_free(source))
        throw std::invalid_argument("bfs_dist_field: source must be a free cell in bounds");
    std::vector<int> dist(size_t(map.width()) * map.height(), -1);
    std::deque<Coord> queue{source};
    dist[map.idx(source)] = 0;
    while (!queue.empty()) {
        const Coord c = queue.front();
        queue.pop_front();
        for (auto& d : kDirs4) {
            const Coord nb{c.x + d[0], c.y + d[1]};
            if (!map.in_bounds(nb) || !map.is_free(nb)) continue;
            if (dist[map.idx(nb)] >= 0) continue;
            dist[map.idx(nb)] = dist[map.idx(c)] + 1;
            queue.push_back(nb);
        }
    }
    return dist;
}

}  // namespace alpha
