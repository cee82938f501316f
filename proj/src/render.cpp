#include "alpha/render.hpp"

#include <algorithm>
#include <cmath>

namespace alpha {

namespace {

std::string header(const char* magic, int w, int h) {
    return std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
}

}  // namespace

std::string render_map_pgm(const GridMap& map) {
    std::string out = header("P5", map.width(), map.height());
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x)
            out.push_back(map.is_obstacle({x, y}) ? char(0) : char(255));
    return out;
}

std::string render_skeleton_ppm(const GridMap& map, const Skeleton& skeleton,
                                const std::vector<MapNode>& nodes) {
    std::vector<uint8_t> is_node(size_t(map.width()) * map.height(), 0);
    for (const auto& n : nodes) is_node[map.idx(n.pos)] = 1;

    std::string out = header("P6", map.width(), map.height());
    for (int y = 0; y < map.height(); ++y)
        for (int x = 0; x < map.width(); ++x) {
            const Coord c{x, y};
            uint8_t r = 230, g = 230, b = 230;
            if (map.is_obstacle(c)) r = g = b = 40;
            if (skeleton.test(c)) {
                r = 220;
                g = 60;
                b = 60;
            }
            if (is_node[map.idx(c)]) {
                r = 40;
                g = 80;
                b = 220;
            }
            out.push_back(char(r));
            out.push_back(char(g));
            out.push_back(char(b));
        }
    return out;
}

std::string render_intent_ppm(const GridMap& map, const IntentGraphObs& intents) {
    const int w = map.width(), h = map.height();
    std::vector<double> heat(size_t(w) * h, 0.0);
    for (const auto& row : intents.rows) {
        if (row.goal_unreachable) continue;
        // variance floor keeps point predictions visible
        const double vx = row.sigma_x + 0.25;
        const double vy = row.sigma_y + 0.25;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                const double dx = x - row.mu_x;
                const double dy = y - row.mu_y;
                const double v = std::exp(-0.5 * (dx * dx / vx + dy * dy / vy));
                heat[size_t(y) * w + x] = std::max(heat[size_t(y) * w + x], v);
            }
    }

    std::string out = header("P6", w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (map.is_obstacle({x, y})) {
                out.append(3, char(0));
                continue;
            }
            const double v = std::clamp(heat[size_t(y) * w + x], 0.0, 1.0);
            // cold blue to warm red
            const auto ch = [](double f) { return char(int(std::lround(f * 255.0))); };
            out.push_back(ch(v));
            out.push_back(ch(0.15 + 0.2 * (1.0 - v)));
            out.push_back(ch(1.0 - v));
        }
    return out;
}

}  // namespace alpha
