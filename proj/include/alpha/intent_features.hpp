#pragma once
// Global dynamic graph: one 9-dim intent row per agent, built from each
// agent's individual shortest path (other agents ignored). The row packs
// the current position, the per-axis mean/variance of the next `horizon`
// path cells, and a unit direction vector with magnitude toward the
// position `horizon` steps ahead.

#include <array>
#include <vector>

#include "alpha/grid_map.hpp"

namespace alpha {

struct IntentVector {
    double x_curr = 0;
    double y_curr = 0;
    double mu_x = 0;
    double mu_y = 0;
    double sigma_x = 0;  // population variance along x, cells^2
    double sigma_y = 0;
    double dx = 0;  // unit direction to the horizon cell, (0,0) when mag = 0
    double dy = 0;
    double mag = 0;  // euclidean distance to the horizon cell, <= horizon
    bool goal_unreachable = false;  // prediction fields zeroed when set

    // Row layout used for serialization and embedding:
    // (x, y, mu_x, sigma_x, mu_y, sigma_y, dx, dy, mag).
    std::array<double, 9> to_array() const {
        return {x_curr, y_curr, mu_x, sigma_x, mu_y, sigma_y, dx, dy, mag};
    }
};

struct IntentGraphObs {
    std::vector<IntentVector> rows;  // indexed by agent id
};

// The next `horizon` cells after agent_pos along its shortest path; when the
// path runs out the goal repeats. horizon must be >= 1. Throws
// std::runtime_error if the goal is unreachable and std::invalid_argument on
// blocked endpoints.
std::vector<Coord> predict_trajectory(const GridMap& map, Coord agent_pos, Coord goal_pos,
                                      int horizon);

// Gaussian fit plus direction vector for one trajectory; traj.size() must
// equal horizon.
IntentVector intent_vector(Coord current, const std::vector<Coord>& traj, int horizon);

// One row per agent, each computed independently. Agents whose goal is
// unreachable keep their position and zero the prediction fields.
IntentGraphObs build_intent_graph(const GridMap& map, const std::vector<Coord>& agent_positions,
                                  const std::vector<Coord>& goals, int horizon);

}  // namespace alpha
