#include "alpha/local_obs.hpp"

#include <cmath>
#include <stdexcept>

namespace alpha {

GoalVec goal_direction(Coord agent_pos, Coord goal_pos) {
    GoalVec v;
    const double dx = goal_pos.x - agent_pos.x;
    const double dy = goal_pos.y - agent_pos.y;
    v.mag = std::sqrt(dx * dx + dy * dy);
    if (v.mag > 0) {
        v.dx = dx / v.mag;
        v.dy = dy / v.mag;
    }
    return v;
}

LocalObs fov_channels(const GridMap& map, const std::vector<AgentSnapshot>& agents, int ego_id,
                      int fov) {
    if (fov < 5 || fov > 21 || fov % 2 == 0)
        throw std::invalid_argument("fov_channels: F must be odd and within [5, 21]");
    if (ego_id < 0 || ego_id >= int(agents.size()))
        throw std::invalid_argument("fov_channels: no such agent");

    const int r = fov / 2;
    const Coord ego = agents[size_t(ego_id)].pos;
    LocalObs obs;
    obs.fov = fov;
    obs.channels.assign(4, std::vector<uint8_t>(size_t(fov) * fov, 0));
    auto set = [&](int ch, int cx, int cy) {
        obs.channels[size_t(ch)][size_t(cy) * fov + cx] = 1;
    };
    auto in_fov = [&](Coord c) {
        return std::abs(c.x - ego.x) <= r && std::abs(c.y - ego.y) <= r;
    };

    for (int cy = 0; cy < fov; ++cy)
        for (int cx = 0; cx < fov; ++cx) {
            const Coord world{ego.x + cx - r, ego.y + cy - r};
            if (!map.in_bounds(world) || map.is_obstacle(world)) set(0, cx, cy);
        }

    for (int i = 0; i < int(agents.size()); ++i) {
        if (i == ego_id) continue;
        const AgentSnapshot& a = agents[size_t(i)];
        if (!in_fov(a.pos)) continue;
        set(1, a.pos.x - ego.x + r, a.pos.y - ego.y + r);
        if (in_fov(a.goal)) set(2, a.goal.x - ego.x + r, a.goal.y - ego.y + r);
    }

    const Coord goal = agents[size_t(ego_id)].goal;
    if (in_fov(goal)) {
        set(3, goal.x - ego.x + r, goal.y - ego.y + r);
    } else {
        // scale the ego->goal ray onto the FOV boundary square
        const double dx = goal.x - ego.x;
        const double dy = goal.y - ego.y;
        const double scale = double(r) / std::max(std::abs(dx), std::abs(dy));
        int px = int(std::llround(dx * scale));
        int py = int(std::llround(dy * scale));
        px = std::max(-r, std::min(r, px));
        py = std::max(-r, std::min(r, py));
        set(3, px + r, py + r);
    }

    obs.goal_vec = goal_direction(ego, goal);
    return obs;
}

}  // namespace alpha
