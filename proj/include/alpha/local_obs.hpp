#pragma once
// Ego-centric field-of-view observation: four binary F x F channels plus a
// goal direction vector.
//
// Channels, with the ego at the center cell:
//   0 obstacles (cells outside the map count as obstacles)
//   1 positions of other agents inside the FOV
//   2 goals of those visible agents, when the goal itself is inside the FOV
//   3 own goal, projected to the FOV boundary along the ego->goal ray when
//     it lies outside (always exactly one set cell)

#include <vector>

#include "alpha/grid_map.hpp"

namespace alpha {

struct GoalVec {
    double dx = 0;
    double dy = 0;
    double mag = 0;  // euclidean
};

struct LocalObs {
    int fov = 0;                                 // F, odd
    std::vector<std::vector<uint8_t>> channels;  // 4 x (F*F), row-major
    GoalVec goal_vec;

    uint8_t at(int channel, int cx, int cy) const {
        return channels[size_t(channel)][size_t(cy) * fov + cx];
    }
};

struct AgentSnapshot {
    Coord pos;
    Coord goal;
};

// F must be odd and within [5, 21].
LocalObs fov_channels(const GridMap& map, const std::vector<AgentSnapshot>& agents, int ego_id,
                      int fov);

GoalVec goal_direction(Coord agent_pos, Coord goal_pos);

}  // namespace alpha
