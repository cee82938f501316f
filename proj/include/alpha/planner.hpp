#pragma once
// Prioritized planning: agents are planned one at a time with space-time A*
// against a reservation table (vertices and edge swaps). Arrived agents park
// on their goals, so later agents must route around them. On failure the
// priority order is reshuffled (seeded) and planning retried.

#include <cstdint>
#include <optional>
#include <vector>

#include "alpha/env.hpp"
#include "alpha/grid_map.hpp"

namespace alpha {

struct JointPlan {
    // positions[agent][t] for t = 0..makespan; every row has makespan+1 cells
    std::vector<std::vector<Coord>> positions;
    int makespan = 0;

    // Joint action vector that moves the plan from step t to t+1; agents
    // beyond their path length stay idle on their goals.
    std::vector<Action> actions_at(int t) const;
};

struct PlanResult {
    bool ok = false;
    JointPlan plan;        // valid when ok
    int failed_agent = -1;  // last agent that could not be scheduled
};

// max_steps bounds every agent's arrival time. retries = extra randomized
// priority orders tried after index order fails.
PlanResult prioritized_plan(const GridMap& map, const std::vector<Coord>& starts,
                            const std::vector<Coord>& goals, int max_steps, int retries = 3,
                            uint64_t seed = 0);

}  // namespace alpha
