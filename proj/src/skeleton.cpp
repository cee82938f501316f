#include "alpha/skeleton.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <numeric>

namespace alpha {

namespace {

// 8-neighborhood in the circular order used by the thinning conditions:
// N, NE, E, SE, S, SW, W, NW.
constexpr int kRing[8][2] = {{0, -1}, {1, -1}, {1, 0},  {1, 1},
                             {0, 1},  {-1, 1}, {-1, 0}, {-1, -1}};

std::array<uint8_t, 8> ring_values(const PixelMask& m, Coord c) {
    std::array<uint8_t, 8> v{};
    for (int k = 0; k < 8; ++k)
        v[k] = m.test({c.x + kRing[k][0], c.y + kRing[k][1]}) ? 1 : 0;
    return v;
}

int ring_sum(const std::array<uint8_t, 8>& v) {
    return std::accumulate(v.begin(), v.end(), 0);
}

// Number of 0->1 transitions around the ring (the crossing number A).
int ring_transitions(const std::array<uint8_t, 8>& v) {
    int t = 0;
    for (int k = 0; k < 8; ++k)
        if (v[k] == 0 && v[(k + 1) % 8] == 1) ++t;
    return t;
}

// Subpass 0 deletes south/east boundary pixels, subpass 1 north/west ones.
bool zs_deletable(const PixelMask& m, Coord c, int subpass) {
    const auto v = ring_values(m, c);
    const int b = ring_sum(v);
    if (b < 2 || b > 6) return false;
    if (ring_transitions(v) != 1) return false;
    const uint8_t n = v[0], e = v[2], s = v[4], w = v[6];
    if (subpass == 0) return (n & e & s) == 0 && (e & s & w) == 0;
    return (n & e & w) == 0 && (n & s & w) == 0;
}

// One thinning iteration (both subpasses). Candidates are marked on a frozen
// copy of the mask, then deleted in raster order with a live recheck that the
// pixel is still simple (one neighbor run, at least two neighbors). Returns
// the number of deleted pixels.
int zs_iterate(PixelMask& m) {
    int deleted = 0;
    for (int subpass = 0; subpass < 2; ++subpass) {
        const PixelMask frozen = m;
        for (int y = 0; y < m.height; ++y) {
            for (int x = 0; x < m.width; ++x) {
                const Coord c{x, y};
                if (!m.test(c) || !zs_deletable(frozen, c, subpass)) continue;
                const auto live = ring_values(m, c);
                if (ring_sum(live) < 2 || ring_transitions(live) != 1) continue;
                m.mask[size_t(y) * m.width + x] = 0;
                ++deleted;
            }
        }
    }
    return deleted;
}

void zs_to_fixpoint(PixelMask& m) {
    while (zs_iterate(m) > 0) {
    }
}

// True if removing c keeps its set neighbors mutually 8-connected. The
// crossing-number shortcut covers almost every case; the fallback walks the
// component once.
bool removal_keeps_connectivity(const PixelMask& m, Coord c) {
    const auto v = ring_values(m, c);
    const int b = ring_sum(v);
    if (b == 0) return false;  // lone pixel, removal would empty its region
    if (ring_transitions(v) == 1) return true;
    // Global check: BFS from one neighbor with c masked out; every other
    // neighbor must be reached.
    std::vector<Coord> nbs;
    for (int k = 0; k < 8; ++k)
        if (v[k]) nbs.push_back({c.x + kRing[k][0], c.y + kRing[k][1]});
    std::vector<uint8_t> seen(size_t(m.width) * m.height, 0);
    seen[size_t(c.y) * m.width + c.x] = 1;  // pretend c is gone
    std::deque<Coord> queue{nbs.front()};
    seen[size_t(nbs.front().y) * m.width + nbs.front().x] = 1;
    while (!queue.empty()) {
        const Coord q = queue.front();
        queue.pop_front();
        for (auto& d : kRing) {
            const Coord n{q.x + d[0], q.y + d[1]};
            if (!m.test(n)) continue;
            auto& flag = seen[size_t(n.y) * m.width + n.x];
            if (flag) continue;
            flag = 1;
            queue.push_back(n);
        }
    }
    for (const Coord& n : nbs)
        if (!seen[size_t(n.y) * m.width + n.x]) return false;
    return true;
}

// Resolves any remaining fully-set 2x2 block by deleting one of its pixels
// under a connectivity guard. Rarely has anything to do after thinning.
// Returns the number of deleted pixels.
int enforce_thinness(PixelMask& m) {
    int deleted = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (int y = 0; y + 1 < m.height; ++y) {
            for (int x = 0; x + 1 < m.width; ++x) {
                const Coord cs[4] = {{x, y}, {x + 1, y}, {x, y + 1}, {x + 1, y + 1}};
                if (!(m.test(cs[0]) && m.test(cs[1]) && m.test(cs[2]) && m.test(cs[3]))) continue;
                for (const Coord& c : cs) {
                    if (removal_keeps_connectivity(m, c)) {
                        m.mask[size_t(c.y) * m.width + c.x] = 0;
                        progress = true;
                        ++deleted;
                        break;
                    }
                }
            }
        }
    }
    return deleted;
}

// Thinning and 2x2 cleanup can re-enable each other; iterate both to a joint
// fixpoint so re-thinning an output is a no-op.
void thin_to_fixpoint(PixelMask& m) {
    for (;;) {
        zs_to_fixpoint(m);
        if (enforce_thinness(m) == 0) break;
    }
}

PixelMask free_mask(const GridMap& map) {
    PixelMask m;
    m.width = map.width();
    m.height = map.height();
    m.mask.resize(size_t(map.width()) * map.height());
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x)
            m.mask[size_t(y) * map.width() + x] = map.is_free({x, y}) ? 1 : 0;
    return m;
}

}  // namespace

int neighbor_count8(const PixelMask& mask, Coord c) {
    return ring_sum(ring_values(mask, c));
}

Skeleton thin_zhang_suen(const GridMap& map) {
    PixelMask m = free_mask(map);
    thin_to_fixpoint(m);
    return m;
}

std::vector<int> chessboard_dt(const GridMap& map) {
    const int w = map.width(), h = map.height();
    const int inf = std::numeric_limits<int>::max() / 2;
    std::vector<int> dt(size_t(w) * h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            dt[size_t(y) * w + x] = map.is_free({x, y}) ? inf : 0;
    // Out-of-bounds counts as distance 0 (the map edge is a wall).
    auto at = [&](int x, int y) -> int {
        if (x < 0 || x >= w || y < 0 || y >= h) return 0;
        return dt[size_t(y) * w + x];
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            int& v = dt[size_t(y) * w + x];
            if (v == 0) continue;
            v = std::min({v, at(x - 1, y - 1) + 1, at(x, y - 1) + 1, at(x + 1, y - 1) + 1,
                          at(x - 1, y) + 1});
        }
    for (int y = h - 1; y >= 0; --y)
        for (int x = w - 1; x >= 0; --x) {
            int& v = dt[size_t(y) * w + x];
            if (v == 0) continue;
            v = std::min({v, at(x + 1, y + 1) + 1, at(x, y + 1) + 1, at(x - 1, y + 1) + 1,
                          at(x + 1, y) + 1});
        }
    return dt;
}

Skeleton thin_medial_axis(const GridMap& map) {
    const int w = map.width(), h = map.height();
    PixelMask m = free_mask(map);
    const std::vector<int> dt = chessboard_dt(map);

    // Ridge anchors: distance-transform local maxima (plateaus included).
    std::vector<uint8_t> anchor(size_t(w) * h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const size_t i = size_t(y) * w + x;
            if (!m.mask[i]) continue;
            bool is_max = true;
            for (auto& d : kRing) {
                const int nx = x + d[0], ny = y + d[1];
                const int nv =
                    (nx < 0 || nx >= w || ny < 0 || ny >= h) ? 0 : dt[size_t(ny) * w + nx];
                if (nv > dt[i]) {
                    is_max = false;
                    break;
                }
            }
            anchor[i] = is_max ? 1 : 0;
        }

    // Erode non-anchor pixels in increasing-distance order; each deletion is
    // a simple-point deletion, so region connectivity is never broken.
    std::vector<size_t> order;
    order.reserve(m.mask.size());
    for (size_t i = 0; i < m.mask.size(); ++i)
        if (m.mask[i] && !anchor[i]) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return dt[a] < dt[b]; });
    bool progress = true;
    while (progress) {
        progress = false;
        for (size_t i : order) {
            if (!m.mask[i]) continue;
            const Coord c{int(i % w), int(i / w)};
            const auto v = ring_values(m, c);
            if (ring_transitions(v) == 1) {
                m.mask[i] = 0;
                progress = true;
            }
        }
    }

    thin_to_fixpoint(m);  // thins 2-wide ridge plateaus left by even widths
    return m;
}

std::vector<MapNode> extract_nodes(const Skeleton& skeleton) {
    std::vector<MapNode> nodes;
    for (int y = 0; y < skeleton.height; ++y)
        for (int x = 0; x < skeleton.width; ++x) {
            const Coord c{x, y};
            if (!skeleton.test(c)) continue;
            const int n = neighbor_count8(skeleton, c);
            if (n >= 3)
                nodes.push_back({c, NodeKind::branch});
            else if (n <= 1)
                nodes.push_back({c, NodeKind::leaf});
        }
    return nodes;
}

std::vector<MapEdge> build_edges(const Skeleton& skeleton, const std::vector<MapNode>& nodes) {
    const int w = skeleton.width, h = skeleton.height;

    // 8-connected component labels over skeleton pixels.
    std::vector<int> comp(size_t(w) * h, -1);
    int n_comp = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const size_t i = size_t(y) * w + x;
            if (!skeleton.mask[i] || comp[i] >= 0) continue;
            comp[i] = n_comp;
            std::deque<Coord> queue{{x, y}};
            while (!queue.empty()) {
                const Coord c = queue.front();
                queue.pop_front();
                for (auto& d : kRing) {
                    const Coord n{c.x + d[0], c.y + d[1]};
                    if (!skeleton.test(n)) continue;
                    auto& cl = comp[size_t(n.y) * w + n.x];
                    if (cl >= 0) continue;
                    cl = n_comp;
                    queue.push_back(n);
                }
            }
            ++n_comp;
        }

    std::vector<uint8_t> is_node(size_t(w) * h, 0);
    for (const MapNode& n : nodes) is_node[size_t(n.pos.y) * w + n.pos.x] = 1;

    std::vector<MapEdge> edges;
    for (size_t i = 0; i < nodes.size(); ++i) {
        for (size_t j = i + 1; j < nodes.size(); ++j) {
            const Coord a = nodes[i].pos, b = nodes[j].pos;
            if (comp[size_t(a.y) * w + a.x] != comp[size_t(b.y) * w + b.x]) continue;
            auto path = astar_skeleton8(skeleton, a, b);
            if (!path) continue;
            bool interior_node = false;
            for (size_t k = 1; k + 1 < path->cells.size(); ++k) {
                const Coord c = path->cells[k];
                if (is_node[size_t(c.y) * w + c.x]) {
                    interior_node = true;
                    break;
                }
            }
            if (interior_node) continue;
            MapEdge e;
            e.a = int(i);
            e.b = int(j);
            e.length = path->length();
            e.skeleton_path = std::move(*path);
            edges.push_back(std::move(e));
        }
    }
    return edges;
}

MapGraph extract_graph(const GridMap& map, ThinMethod method) {
    MapGraph g;
    g.skeleton = method == ThinMethod::zhang_suen ? thin_zhang_suen(map) : thin_medial_axis(map);
    g.nodes = extract_nodes(g.skeleton);
    g.edges = build_edges(g.skeleton, g.nodes);
    return g;
}

}  // namespace alpha
