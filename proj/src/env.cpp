#include "alpha/env.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "alpha/pathfind.hpp"

namespace alpha {

const char* action_name(Action a) {
    switch (a) {
        case Action::up: return "up";
        case Action::down: return "down";
        case Action::left: return "left";
        case Action::right: return "right";
        case Action::idle: return "idle";
    }
    return "?";
}

Coord action_delta(Action a) {
    switch (a) {
        case Action::up: return {0, -1};
        case Action::down: return {0, 1};
        case Action::left: return {-1, 0};
        case Action::right: return {1, 0};
        case Action::idle: return {0, 0};
    }
    return {0, 0};
}

Action action_from_name(const std::string& name) {
    for (int k = 0; k < kNumActions; ++k)
        if (name == action_name(Action(k))) return Action(k);
    throw std::invalid_argument("unknown action name: " + name);
}

EnvState reset(const GridMap& map, const std::vector<Coord>& starts,
               const std::vector<Coord>& goals, int max_steps) {
    if (starts.empty() || starts.size() != goals.size())
        throw std::invalid_argument("reset: starts and goals must be non-empty and equal-sized");
    if (max_steps < 1) throw std::invalid_argument("reset: max_steps must be >= 1");
    const int n = int(starts.size());
    for (int i = 0; i < n; ++i) {
        const std::string who = "agent " + std::to_string(i);
        if (!map.in_bounds(starts[size_t(i)]) || !map.is_free(starts[size_t(i)]))
            throw std::invalid_argument("reset: start of " + who + " is blocked or out of bounds");
        if (!map.in_bounds(goals[size_t(i)]) || !map.is_free(goals[size_t(i)]))
            throw std::invalid_argument("reset: goal of " + who + " is blocked or out of bounds");
        for (int j = 0; j < i; ++j) {
            if (starts[size_t(j)] == starts[size_t(i)])
                throw std::invalid_argument("reset: duplicate start for " + who);
            if (goals[size_t(j)] == goals[size_t(i)])
                throw std::invalid_argument("reset: duplicate goal for " + who);
        }
        const auto dist = bfs_dist_field(map, starts[size_t(i)]);
        if (dist[map.idx(goals[size_t(i)])] < 0)
            throw std::invalid_argument("reset: goal of " + who + " is unreachable");
    }
    EnvState st;
    st.map = &map;
    st.positions = starts;
    st.previous_positions = starts;
    st.goals = goals;
    st.step = 0;
    st.max_steps = max_steps;
    return st;
}

std::vector<Action> valid_actions(const EnvState& state, int agent_id) {
    if (agent_id < 0 || agent_id >= state.num_agents())
        throw std::invalid_argument("valid_actions: no such agent");
    const Coord pos = state.positions[size_t(agent_id)];
    const Coord prev = state.previous_positions[size_t(agent_id)];
    std::vector<Action> out;
    for (int k = 0; k < kNumActions; ++k) {
        const Action a = Action(k);
        if (a == Action::idle) {
            out.push_back(a);
            continue;
        }
        const Coord d = action_delta(a);
        const Coord target{pos.x + d.x, pos.y + d.y};
        if (!state.map->in_bounds(target) || state.map->is_obstacle(target)) continue;
        if (target == prev && prev != pos) continue;  // anti-oscillation
        out.push_back(a);
    }
    return out;
}

EpisodeStatus is_done(const EnvState& state) {
    bool all_on_goal = true;
    for (int i = 0; i < state.num_agents(); ++i)
        if (state.positions[size_t(i)] != state.goals[size_t(i)]) {
            all_on_goal = false;
            break;
        }
    if (all_on_goal) return EpisodeStatus::success;
    if (state.step >= state.max_steps) return EpisodeStatus::timeout;
    return EpisodeStatus::running;
}

double compute_reward(Action executed, bool on_goal, bool collided, int blocking_eta) {
    double base;
    if (collided)
        base = -2.0;
    else if (executed == Action::idle)
        base = on_goal ? 0.0 : -0.3;
    else
        base = -0.3;
    if (executed == Action::idle && blocking_eta > 0) base += -1.0 * blocking_eta;
    return base;
}

BlockingResult is_blocking(const EnvState& state, int agent_id, int tau) {
    if (agent_id < 0 || agent_id >= state.num_agents())
        throw std::invalid_argument("is_blocking: no such agent");
    const GridMap& base = *state.map;
    const Coord ego = state.positions[size_t(agent_id)];

    // map with only the ego added as an obstacle
    std::vector<uint8_t> cells = base.cells();
    cells[base.idx(ego)] = 1;
    const GridMap with_ego(base.width(), base.height(), std::move(cells));

    BlockingResult res;
    for (int j = 0; j < state.num_agents(); ++j) {
        if (j == agent_id) continue;
        const Coord from = state.positions[size_t(j)];
        const Coord goal = state.goals[size_t(j)];
        if (from == goal) continue;

        int before = -1;  // -1 encodes "no path"
        if (from != ego && goal != ego) {
            const auto field = bfs_dist_field(with_ego, from);
            before = field[with_ego.idx(goal)];
        }
        const auto after_field = bfs_dist_field(base, from);
        const int after = after_field[base.idx(goal)];

        const bool blocked =
            (before < 0 && after >= 0) || (before >= 0 && after >= 0 && before > after + tau);
        if (blocked) ++res.eta;
    }
    res.blocking = res.eta > 0;
    return res;
}

StepOutcome step_joint(EnvState& state, const std::vector<Action>& actions, int blocking_tau) {
    const int n = state.num_agents();
    if (int(actions.size()) != n)
        throw std::invalid_argument("step_joint: need exactly one action per agent");

    const std::vector<Coord> before = state.positions;
    std::vector<Coord> intended(static_cast<size_t>(n));
    std::vector<bool> reverted(static_cast<size_t>(n), false);
    std::vector<bool> mover(static_cast<size_t>(n), false);

    for (int i = 0; i < n; ++i) {
        const Coord d = action_delta(actions[size_t(i)]);
        Coord t{before[size_t(i)].x + d.x, before[size_t(i)].y + d.y};
        if (actions[size_t(i)] != Action::idle) {
            if (!state.map->in_bounds(t) || state.map->is_obstacle(t)) {
                // invalid move: executed as idle, counts as a collision
                reverted[size_t(i)] = true;
                t = before[size_t(i)];
            } else {
                mover[size_t(i)] = true;
            }
        }
        intended[size_t(i)] = t;
    }

    // Cascade reverts to a fixpoint: stationary agents pin their cells, then
    // same-target and swap conflicts revert whole groups symmetrically.
    bool changed = true;
    while (changed) {
        changed = false;
        auto revert = [&](int i) {
            if (mover[size_t(i)] && !reverted[size_t(i)]) {
                reverted[size_t(i)] = true;
                mover[size_t(i)] = false;
                intended[size_t(i)] = before[size_t(i)];
                changed = true;
            }
        };

        std::unordered_map<int64_t, int> stationary;  // cell -> any stationary occupant
        auto key = [&](Coord c) { return int64_t(c.y) * state.map->width() + c.x; };
        for (int i = 0; i < n; ++i)
            if (!mover[size_t(i)]) stationary[key(before[size_t(i)])] = i;

        for (int i = 0; i < n; ++i) {
            if (!mover[size_t(i)] || reverted[size_t(i)]) continue;
            const auto hit = stationary.find(key(intended[size_t(i)]));
            if (hit != stationary.end()) revert(i);
        }

        std::unordered_map<int64_t, std::vector<int>> targets;
        for (int i = 0; i < n; ++i)
            if (mover[size_t(i)]) targets[key(intended[size_t(i)])].push_back(i);
        for (auto& [cell, group] : targets)
            if (group.size() > 1)
                for (int i : group) revert(i);

        for (int i = 0; i < n; ++i) {
            if (!mover[size_t(i)]) continue;
            for (int j = i + 1; j < n; ++j) {
                if (!mover[size_t(j)]) continue;
                if (intended[size_t(i)] == before[size_t(j)] &&
                    intended[size_t(j)] == before[size_t(i)]) {
                    revert(i);
                    revert(j);
                }
            }
        }
    }

    StepOutcome out;
    out.agents.resize(size_t(n));
    for (int i = 0; i < n; ++i) {
        AgentOutcome& a = out.agents[size_t(i)];
        a.collided = reverted[size_t(i)];
        a.executed = mover[size_t(i)] ? actions[size_t(i)] : Action::idle;
        if (actions[size_t(i)] == Action::idle) {
            const BlockingResult b = is_blocking(state, i, blocking_tau);
            a.blocking_eta = b.eta;
        }
        const bool on_goal = intended[size_t(i)] == state.goals[size_t(i)];
        a.reward = compute_reward(a.executed, on_goal, a.collided, a.blocking_eta);
    }

    state.previous_positions = before;
    state.positions = intended;
    state.step += 1;
    out.status = is_done(state);
    out.done = out.status != EpisodeStatus::running;
    return out;
}

}  // namespace alpha
