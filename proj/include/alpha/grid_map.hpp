#pragma once
// Immutable 2D occupancy grid plus the text format used by map files.
//
// Text format: one line per row, '.' = free, '#' = obstacle, all rows the
// same length, rows ordered top to bottom. Coordinates are (x = column,
// y = row) with the origin at the top-left cell.

#include <cstdint>
#include <string>
#include <vector>

#include "alpha/core.hpp"

namespace alpha {

class GridMap {
public:
    GridMap(int width, int height, std::vector<uint8_t> obstacles);

    // All-free map.
    static GridMap open(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    bool in_bounds(Coord c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    bool is_obstacle(Coord c) const { return cells_[idx(c)] != 0; }
    bool is_free(Coord c) const { return cells_[idx(c)] == 0; }

    int free_count() const;
    int obstacle_count() const;
    size_t idx(Coord c) const { return size_t(c.y) * width_ + c.x; }

    const std::vector<uint8_t>& cells() const { return cells_; }

    friend bool operator==(const GridMap& a, const GridMap& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.cells_ == b.cells_;
    }

private:
    int width_;
    int height_;
    std::vector<uint8_t> cells_;  // row-major, 0 = free, 1 = obstacle
};

// Throws std::invalid_argument on ragged rows or illegal characters; the
// message names the offending row index.
GridMap parse_map(const std::string& text);

// Canonical form: every row terminated by '\n'. parse_map(serialize_map(m)) == m.
std::string serialize_map(const GridMap& map);

}  // namespace alpha
