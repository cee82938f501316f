#pragma once
// Test-side oracles, kept independent of the library's search and feature
// code paths: plain BFS, flood fill, and neighborhood counting written
// directly against the cell buffers.

#include <deque>
#include <vector>

#include "alpha/grid_map.hpp"
#include "alpha/pathfind.hpp"

namespace oracle {

// 4-connected BFS move counts from `from` over free cells; -1 = unreachable.
inline std::vector<int> bfs_grid4(const alpha::GridMap& map, alpha::Coord from) {
    const int w = map.width(), h = map.height();
    std::vector<int> dist(size_t(w) * h, -1);
    std::deque<alpha::Coord> q{from};
    dist[size_t(from.y) * w + from.x] = 0;
    const int dx[4] = {0, 0, -1, 1}, dy[4] = {-1, 1, 0, 0};
    while (!q.empty()) {
        const auto c = q.front();
        q.pop_front();
        for (int k = 0; k < 4; ++k) {
            const alpha::Coord n{c.x + dx[k], c.y + dy[k]};
            if (n.x < 0 || n.x >= w || n.y < 0 || n.y >= h) continue;
            if (!map.is_free(n)) continue;
            auto& d = dist[size_t(n.y) * w + n.x];
            if (d >= 0) continue;
            d = dist[size_t(c.y) * w + c.x] + 1;
            q.push_back(n);
        }
    }
    return dist;
}

// Number of 4-connected components of free cells.
inline int free_components4(const alpha::GridMap& map) {
    const int w = map.width(), h = map.height();
    std::vector<uint8_t> seen(size_t(w) * h, 0);
    int comps = 0;
    const int dx[4] = {0, 0, -1, 1}, dy[4] = {-1, 1, 0, 0};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!map.is_free({x, y}) || seen[size_t(y) * w + x]) continue;
            ++comps;
            std::deque<alpha::Coord> q{{x, y}};
            seen[size_t(y) * w + x] = 1;
            while (!q.empty()) {
                const auto c = q.front();
                q.pop_front();
                for (int k = 0; k < 4; ++k) {
                    const alpha::Coord n{c.x + dx[k], c.y + dy[k]};
                    if (n.x < 0 || n.x >= w || n.y < 0 || n.y >= h) continue;
                    if (!map.is_free(n) || seen[size_t(n.y) * w + n.x]) continue;
                    seen[size_t(n.y) * w + n.x] = 1;
                    q.push_back(n);
                }
            }
        }
    return comps;
}

// 8-connected components over an arbitrary mask.
inline int mask_components8(const alpha::PixelMask& m) {
    std::vector<uint8_t> seen(m.mask.size(), 0);
    int comps = 0;
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x) {
            if (!m.test({x, y}) || seen[size_t(y) * m.width + x]) continue;
            ++comps;
            std::deque<alpha::Coord> q{{x, y}};
            seen[size_t(y) * m.width + x] = 1;
            while (!q.empty()) {
                const auto c = q.front();
                q.pop_front();
                for (int ddy = -1; ddy <= 1; ++ddy)
                    for (int ddx = -1; ddx <= 1; ++ddx) {
                        if (ddx == 0 && ddy == 0) continue;
                        const alpha::Coord n{c.x + ddx, c.y + ddy};
                        if (!m.test(n) || seen[size_t(n.y) * m.width + n.x]) continue;
                        seen[size_t(n.y) * m.width + n.x] = 1;
                        q.push_back(n);
                    }
            }
        }
    return comps;
}

// 8-neighbor count recomputed directly.
inline int mask_neighbors8(const alpha::PixelMask& m, alpha::Coord c) {
    int n = 0;
    for (int ddy = -1; ddy <= 1; ++ddy)
        for (int ddx = -1; ddx <= 1; ++ddx) {
            if (ddx == 0 && ddy == 0) continue;
            if (m.test({c.x + ddx, c.y + ddy})) ++n;
        }
    return n;
}

// True if the mask contains a fully-set 2x2 block.
inline bool has_2x2_block(const alpha::PixelMask& m) {
    for (int y = 0; y + 1 < m.height; ++y)
        for (int x = 0; x + 1 < m.width; ++x)
            if (m.test({x, y}) && m.test({x + 1, y}) && m.test({x, y + 1}) &&
                m.test({x + 1, y + 1}))
                return true;
    return false;
}

}  // namespace oracle
