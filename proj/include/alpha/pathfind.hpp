#pragma once
// Deterministic shortest-path primitives on grids and skeleton masks.
//
// A* expands ties in lexicographic (y, x) order with FIFO among equal keys,
// so identical inputs always yield byte-identical paths. Path length is the
// move count (cells.size() - 1); diagonal skeleton moves cost 1.

#include <optional>
#include <vector>

#include "alpha/core.hpp"
#include "alpha/grid_map.hpp"

namespace alpha {

struct Path {
    std::vector<Coord> cells;  // start .. goal inclusive
    int length() const { return int(cells.size()) - 1; }
};

inline int manhattan(Coord a, Coord b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }
inline int chebyshev(Coord a, Coord b) {
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

// Shortest 4-connected path over free cells, or nullopt if unreachable.
// Throws std::invalid_argument if either endpoint is blocked or out of bounds.
std::optional<Path> astar_grid4(const GridMap& map, Coord start, Coord goal);

// Boolean pixel mask with grid dimensions; used for skeleton search.
struct PixelMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> mask;  // row-major, nonzero = set

    bool in_bounds(Coord c) const { return c.x >= 0 && c.x < width && c.y >= 0 && c.y < height; }
    bool test(Coord c) const { return in_bounds(c) && mask[size_t(c.y) * width + c.x] != 0; }
    int count() const;
};

// Shortest 8-connected path confined to set pixels (unit cost per move), or
// nullopt if the endpoints lie in different components. Throws
// std::invalid_argument if an endpoint is not a set pixel.
std::optional<Path> astar_skeleton8(const PixelMask& skeleton, Coord start, Coord goal);

// Single-source BFS move counts over free cells (4-connectivity); -1 marks
// unreachable cells. Source must be free and in bounds.
std::vector<int> bfs_dist_field(const GridMap& map, Coord source);

}  // namespace alpha
