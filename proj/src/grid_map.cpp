#include "alpha/grid_map.hpp"

#include <algorithm>
#include <stdexcept>

namespace alpha {

GridMap::GridMap(int width, int height, std::vector<uint8_t> obstacles)
    : width_(width), height_(height), cells_(std::move(obstacles)) {
    if (width_ < 1 || height_ < 1)
        throw std::invalid_argument("GridMap: dimensions must be positive");
    if (cells_.size() != size_t(width_) * height_)
        throw std::invalid_argument("GridMap: cell buffer does not match dimensions");
    for (uint8_t c : cells_)
        if (c > 1) throw std::invalid_argument("GridMap: cells must be 0 (free) or 1 (obstacle)");
}

GridMap GridMap::open(int width, int height) {
    return GridMap(width, height, std::vector<uint8_t>(size_t(width) * height, 0));
}

int GridMap::free_count() const {
    return int(std::count(cells_.begin(), cells_.end(), uint8_t(0)));
}

int GridMap::obstacle_count() const {
    return int(cells_.size()) - free_count();
}

GridMap parse_map(const std::string& text) {
    std::vector<uint8_t> cells;
    int width = -1;
    int row = 0;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        const size_t end = nl == std::string::npos ? text.size() : nl;
        const int len = int(end - pos);
        if (len == 0 && nl == std::string::npos) break;  // ignore trailing blank fragment
        if (width < 0)
            width = len;
        else if (len != width)
            throw std::invalid_argument("parse_map: ragged row " + std::to_string(row) +
                                        " (expected width " + std::to_string(width) + ", got " +
                                        std::to_string(len) + ")");
        for (size_t i = pos; i < end; ++i) {
            const char ch = text[i];
            if (ch == '.')
                cells.push_back(0);
            else if (ch == '#')
                cells.push_back(1);
            else
                throw std::invalid_argument("parse_map: illegal character '" + std::string(1, ch) +
                                            "' in row " + std::to_string(row));
        }
        ++row;
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    if (width <= 0 || row == 0) throw std::invalid_argument("parse_map: empty map text");
    return GridMap(width, row, std::move(cells));
}

std::string serialize_map(const GridMap& map) {
    std::string out;
    out.reserve(size_t(map.height()) * (map.width() + 1));
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x)
            out.push_back(map.is_obstacle({x, y}) ? '#' : '.');
        out.push_back('\n');
    }
    return out;
}

}  // namespace alpha
