#include "alpha/map_gen.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

namespace alpha {

namespace {

constexpr int kDirs4[4][2] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};

// Labels each free cell with its 4-connected component id; returns component count.
int label_components(const std::vector<uint8_t>& cells, int w, int h, std::vector<int>& label) {
    label.assign(cells.size(), -1);
    int count = 0;
    std::deque<Coord> queue;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t i = size_t(y) * w + x;
            if (cells[i] != 0 || label[i] >= 0) continue;
            label[i] = count;
            queue.push_back({x, y});
            while (!queue.empty()) {
                const Coord c = queue.front();
                queue.pop_front();
                for (auto& d : kDirs4) {
                    const Coord n{c.x + d[0], c.y + d[1]};
                    if (n.x < 0 || n.x >= w || n.y < 0 || n.y >= h) continue;
                    const size_t ni = size_t(n.y) * w + n.x;
                    if (cells[ni] != 0 || label[ni] >= 0) continue;
                    label[ni] = count;
                    queue.push_back(n);
                }
            }
            ++count;
        }
    }
    return count;
}

// Fills every free cell outside the largest component (ties broken toward the
// component containing the first free cell in raster order).
void fill_minor_components(std::vector<uint8_t>& cells, int w, int h) {
    std::vector<int> label;
    const int count = label_components(cells, w, h, label);
    if (count <= 1) return;
    std::vector<int> sizes(count, 0);
    for (int v : label)
        if (v >= 0) ++sizes[v];
    int keep = 0;
    for (int i = 1; i < count; ++i)
        if (sizes[i] > sizes[keep]) keep = i;
    for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i] == 0 && label[i] != keep) cells[i] = 1;
}

// Carves obstacle cells until the free space is one 4-connected component.
// Repeatedly BFS-expands component 0 through obstacle cells until another
// component is reached, then frees the obstacle cells along that path.
void carve_connect(std::vector<uint8_t>& cells, int w, int h) {
    for (;;) {
        std::vector<int> label;
        if (label_components(cells, w, h, label) <= 1) return;

        std::vector<int> parent(cells.size(), -2);
        std::deque<size_t> queue;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (label[i] == 0) {
                parent[i] = -1;
                queue.push_back(i);
            }
        }
        size_t hit = SIZE_MAX;
        while (!queue.empty() && hit == SIZE_MAX) {
            const size_t i = queue.front();
            queue.pop_front();
            const int x = int(i % w), y = int(i / w);
            for (auto& d : kDirs4) {
                const int nx = x + d[0], ny = y + d[1];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const size_t ni = size_t(ny) * w + nx;
                if (parent[ni] != -2) continue;
                parent[ni] = int(i);
                if (cells[ni] == 0 && label[ni] != 0) {
                    hit = ni;
                    break;
                }
                queue.push_back(ni);
            }
        }
        if (hit == SIZE_MAX) return;  // unreachable; cannot happen on a full grid
        for (int i = parent[hit]; i >= 0; i = parent[i])
            cells[i] = 0;
    }
}

struct Region {
    int x, y, w, h;
};

}  // namespace

GridMap generate_room_map(int width, int height, const RoomGenParams& p) {
    if (width < 10 || width > 256 || height < 10 || height > 256)
        throw std::invalid_argument("generate_room_map: dimensions must lie in [10, 256]");
    if (p.min_room_side > p.max_room_side || p.min_room_side < 1)
        throw std::invalid_argument("generate_room_map: invalid room side bounds");
    if (p.corridor_width_min < 1 || p.corridor_width_min > p.corridor_width_max)
        throw std::invalid_argument("generate_room_map: invalid corridor width range");
    if (p.door_width < 1) throw std::invalid_argument("generate_room_map: door_width must be >= 1");

    Rng rng(p.seed);
    std::vector<uint8_t> cells(size_t(width) * height, 0);
    auto set_wall = [&](int x, int y) { cells[size_t(y) * width + x] = 1; };

    // Enclosing ring.
    for (int x = 0; x < width; ++x) {
        set_wall(x, 0);
        set_wall(x, height - 1);
    }
    for (int y = 0; y < height; ++y) {
        set_wall(0, y);
        set_wall(width - 1, y);
    }

    // BSP over the interior. Walls are recorded first, doors carved after all
    // walls are drawn so a door can never be resealed by a later wall.
    struct Door {
        bool vertical;  // orientation of the wall the door sits in
        int wall_pos;   // x of a vertical wall / y of a horizontal wall
        int lo, hi;     // span of the wall along its axis
    };
    std::vector<Door> doors;
    std::vector<Region> stack{{1, 1, width - 2, height - 2}};
    bool split_any = false;
    auto try_split = [&](Region r, bool forced) -> bool {
        const bool can_v = r.w >= 2 * p.min_room_side + 1;
        const bool can_h = r.h >= 2 * p.min_room_side + 1;
        if (!can_v && !can_h) return false;
        if (!forced && r.w <= p.max_room_side && r.h <= p.max_room_side) return false;
        bool vertical;
        if (can_v && can_h)
            vertical = r.w != r.h ? r.w > r.h : rng.bernoulli(0.5);
        else
            vertical = can_v;
        if (vertical) {
            const int wx = r.x + p.min_room_side + rng.uniform_int(0, r.w - 2 * p.min_room_side - 1);
            for (int y = r.y; y < r.y + r.h; ++y) set_wall(wx, y);
            doors.push_back({true, wx, r.y, r.y + r.h - 1});
            stack.push_back({r.x, r.y, wx - r.x, r.h});
            stack.push_back({wx + 1, r.y, r.x + r.w - wx - 1, r.h});
        } else {
            const int wy = r.y + p.min_room_side + rng.uniform_int(0, r.h - 2 * p.min_room_side - 1);
            for (int x = r.x; x < r.x + r.w; ++x) set_wall(x, wy);
            doors.push_back({false, wy, r.x, r.x + r.w - 1});
            stack.push_back({r.x, r.y, r.w, wy - r.y});
            stack.push_back({r.x, wy + 1, r.w, r.y + r.h - wy - 1});
        }
        split_any = true;
        return true;
    };
    while (!stack.empty()) {
        const Region r = stack.back();
        stack.pop_back();
        try_split(r, false);
    }
    if (!split_any) try_split({1, 1, width - 2, height - 2}, true);

    // Door gaps, width sampled in [door_width, corridor_width_max].
    const int door_hi = std::max(p.door_width, p.corridor_width_max);
    for (const Door& d : doors) {
        const int g = rng.uniform_int(p.door_width, door_hi);
        const int span = d.hi - d.lo + 1;
        const int gw = std::min(g, span);
        const int at = d.lo + rng.uniform_int(0, span - gw);
        for (int k = 0; k < gw; ++k) {
            if (d.vertical)
                cells[size_t(at + k) * width + d.wall_pos] = 0;
            else
                cells[size_t(d.wall_pos) * width + at + k] = 0;
        }
    }

    // Full-span corridors inside the ring, width-capped on small maps.
    const int n_corridors = 1 + (width + height) / 40;
    const int cw_cap = std::max(1, (std::min(width, height) - 2) / 4);
    for (int c = 0; c < n_corridors; ++c) {
        const bool horizontal = rng.bernoulli(0.5);
        const int cw =
            std::min(rng.uniform_int(p.corridor_width_min, p.corridor_width_max), cw_cap);
        if (horizontal) {
            const int y0 = rng.uniform_int(1, std::max(1, height - 1 - cw));
            for (int y = y0; y < std::min(y0 + cw, height - 1); ++y)
                for (int x = 1; x < width - 1; ++x) cells[size_t(y) * width + x] = 0;
        } else {
            const int x0 = rng.uniform_int(1, std::max(1, width - 1 - cw));
            for (int x = x0; x < std::min(x0 + cw, width - 1); ++x)
                for (int y = 1; y < height - 1; ++y) cells[size_t(y) * width + x] = 0;
        }
    }

    // A corridor may have flattened every partition wall on small maps; the
    // output must still contain an interior wall with a door gap, i.e. an
    // interior free cell flanked by obstacles on two opposite sides.
    auto has_door_gap = [&] {
        auto blocked = [&](int x, int y) { return cells[size_t(y) * width + x] != 0; };
        for (int y = 1; y < height - 1; ++y)
            for (int x = 1; x < width - 1; ++x) {
                if (blocked(x, y)) continue;
                if ((blocked(x - 1, y) && blocked(x + 1, y)) ||
                    (blocked(x, y - 1) && blocked(x, y + 1)))
                    return true;
            }
        return false;
    };
    if (!has_door_gap()) {
        const bool vertical = width >= height;
        if (vertical) {
            const int wx = 1 + p.min_room_side +
                           rng.uniform_int(0, std::max(0, width - 2 - 2 * p.min_room_side - 1));
            for (int y = 1; y < height - 1; ++y) cells[size_t(y) * width + wx] = 1;
            const int gw = std::min(p.door_width, height - 2);
            const int at = 1 + rng.uniform_int(0, height - 2 - gw);
            for (int k = 0; k < gw; ++k) cells[size_t(at + k) * width + wx] = 0;
        } else {
            const int wy = 1 + p.min_room_side +
                           rng.uniform_int(0, std::max(0, height - 2 - 2 * p.min_room_side - 1));
            for (int x = 1; x < width - 1; ++x) cells[size_t(wy) * width + x] = 1;
            const int gw = std::min(p.door_width, width - 2);
            const int at = 1 + rng.uniform_int(0, width - 2 - gw);
            for (int k = 0; k < gw; ++k) cells[size_t(wy) * width + at + k] = 0;
        }
    }

    carve_connect(cells, width, height);
    return GridMap(width, height, std::move(cells));
}

GridMap generate_random_map(int width, int height, double density, uint64_t seed) {
    if (width < 3 || height < 3)
        throw std::invalid_argument("generate_random_map: dimensions must be >= 3");
    if (!(density >= 0.0 && density <= 0.5))
        throw std::invalid_argument("generate_random_map: density must lie in [0, 0.5]");

    Rng rng(seed);
    std::vector<uint8_t> cells(size_t(width) * height, 0);
    for (auto& c : cells) c = rng.bernoulli(density) ? 1 : 0;

    if (std::count(cells.begin(), cells.end(), uint8_t(0)) == 0)
        cells[size_t(height / 2) * width + width / 2] = 0;

    fill_minor_components(cells, width, height);
    return GridMap(width, height, std::move(cells));
}

}  // namespace alpha
