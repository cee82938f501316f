#include "alpha/intent_features.hpp"

#include <cmath>
#include <stdexcept>

#include "alpha/pathfind.hpp"

namespace alpha {

std::vector<Coord> predict_trajectory(const GridMap& map, Coord agent_pos, Coord goal_pos,
                                      int horizon) {
    if (horizon < 1) throw std::invalid_argument("predict_trajectory: horizon must be >= 1");
    const auto path = astar_grid4(map, agent_pos, goal_pos);
    if (!path) throw std::runtime_error("predict_trajectory: goal unreachable");
    std::vector<Coord> traj;
    traj.reserve(size_t(horizon));
    // path->cells[0] is the current cell; future steps only
    for (int k = 1; k <= horizon; ++k)
        traj.push_back(k < int(path->cells.size()) ? path->cells[size_t(k)] : goal_pos);
    return traj;
}

IntentVector intent_vector(Coord current, const std::vector<Coord>& traj, int horizon) {
    if (int(traj.size()) != horizon)
        throw std::invalid_argument("intent_vector: trajectory length must equal the horizon");
    IntentVector v;
    v.x_curr = current.x;
    v.y_curr = current.y;

    double sx = 0, sy = 0;
    for (const Coord& c : traj) {
        sx += c.x;
        sy += c.y;
    }
    v.mu_x = sx / horizon;
    v.mu_y = sy / horizon;
    double vx = 0, vy = 0;
    for (const Coord& c : traj) {
        vx += (c.x - v.mu_x) * (c.x - v.mu_x);
        vy += (c.y - v.mu_y) * (c.y - v.mu_y);
    }
    v.sigma_x = vx / horizon;
    v.sigma_y = vy / horizon;

    const Coord tip = traj.back();
    const double ddx = tip.x - current.x;
    const double ddy = tip.y - current.y;
    v.mag = std::sqrt(ddx * ddx + ddy * ddy);
    if (v.mag > 0) {
        v.dx = ddx / v.mag;
        v.dy = ddy / v.mag;
    }
    return v;
}

IntentGraphObs build_intent_graph(const GridMap& map, const std::vector<Coord>& agent_positions,
                                  const std::vector<Coord>& goals, int horizon) {
    if (agent_positions.size() != goals.size())
        throw std::invalid_argument("build_intent_graph: one goal per agent required");
    IntentGraphObs obs;
    obs.rows.reserve(agent_positions.size());
    for (size_t i = 0; i < agent_positions.size(); ++i) {
        try {
            const auto traj = predict_trajectory(map, agent_positions[i], goals[i], horizon);
            obs.rows.push_back(intent_vector(agent_positions[i], traj, horizon));
        } catch (const std::runtime_error&) {
            IntentVector v;
            v.x_curr = agent_positions[i].x;
            v.y_curr = agent_positions[i].y;
            v.goal_unreachable = true;
            obs.rows.push_back(v);
        }
    }
    return obs;
}

}  // namespace alpha
