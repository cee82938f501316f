#pragma once
// MAPF environment: synchronized joint stepping with symmetric conflict
// resolution, the reward table, valid-action lists, and blocking detection.
//
// Reward table (per agent, per step):
//   move                      -0.3
//   idle off goal             -0.3
//   idle on goal               0.0
//   collision (reverted move) -2.0, replacing the base reward
//   blocking, idle only       -1.0 * eta, added on top of the base reward

#include <string>
#include <vector>

#include "alpha/grid_map.hpp"

namespace alpha {

enum class Action : int { up = 0, down = 1, left = 2, right = 3, idle = 4 };
constexpr int kNumActions = 5;

const char* action_name(Action a);
Coord action_delta(Action a);
Action action_from_name(const std::string& name);

enum class EpisodeStatus { running, success, timeout };

struct EnvState {
    const GridMap* map = nullptr;
    std::vector<Coord> positions;
    std::vector<Coord> previous_positions;
    std::vector<Coord> goals;
    int step = 0;
    int max_steps = 256;

    int num_agents() const { return int(positions.size()); }
};

struct AgentOutcome {
    Action executed = Action::idle;  // post conflict resolution
    double reward = 0;
    bool collided = false;
    int blocking_eta = 0;  // number of agents this one blocked (idle actions only)
};

struct StepOutcome {
    std::vector<AgentOutcome> agents;
    bool done = false;
    EpisodeStatus status = EpisodeStatus::running;
};

struct BlockingResult {
    bool blocking = false;
    int eta = 0;
};

// Training regime step cap; evaluation uses 512.
constexpr int kDefaultMaxStepsTrain = 256;
constexpr int kDefaultMaxStepsEval = 512;
constexpr int kDefaultBlockingTau = 10;

// Starts and goals must be pairwise-distinct free cells with every goal
// reachable from its start; violations raise std::invalid_argument naming
// the agent.
EnvState reset(const GridMap& map, const std::vector<Coord>& starts,
               const std::vector<Coord>& goals, int max_steps);

// Always contains idle. Excludes moves off the map or into obstacles and the
// move that would return to the agent's previous cell. Moves into other
// agents' cells are NOT excluded; coordination is the policy's job.
std::vector<Action> valid_actions(const EnvState& state, int agent_id);

// All intents are resolved simultaneously. Movers revert to idle (and are
// flagged collided) when they target an obstacle or map edge, share a target
// cell with another mover, swap cells with another agent, or target the cell
// of an agent that stays put; reverts cascade to a fixpoint. Agents that
// chose idle never collide. Rewards follow the table above, with blocking
// evaluated on the pre-step state for agents that chose idle.
StepOutcome step_joint(EnvState& state, const std::vector<Action>& actions,
                       int blocking_tau = kDefaultBlockingTau);

double compute_reward(Action executed, bool on_goal, bool collided, int blocking_eta);

// Another agent counts as blocked when removing the ego from the map either
// unlocks a path to that agent's goal or shortens it by more than tau moves.
// Only the ego is treated as a temporary obstacle.
BlockingResult is_blocking(const EnvState& state, int agent_id, int tau = kDefaultBlockingTau);

EpisodeStatus is_done(const EnvState& state);

}  // namespace alpha
