#pragma once
// Episode runner, scripted policies, and the evaluation metrics.
//
// Arrival is judged at episode end: an agent arrived iff it occupies its
// goal on the final state, and its arrival step is the first step from
// which it stayed there. Timed-out episodes contribute max_steps to the
// makespan and episode-length metrics.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "alpha/env.hpp"
#include "alpha/planner.hpp"

namespace alpha {

using Policy = std::function<std::vector<Action>(const EnvState&)>;

struct StepLogEntry {
    int step = 0;  // 1-based, the value of state.step after the transition
    std::vector<Action> actions;  // executed actions
    std::vector<double> rewards;
    std::vector<Coord> positions;
    std::vector<uint8_t> collided;
    std::vector<int> eta;
};

struct EpisodeRecord {
    std::string scenario_id;
    int n_agents = 0;
    EpisodeStatus status = EpisodeStatus::running;
    int steps = 0;  // steps actually taken
    int max_steps = 0;
    std::vector<std::optional<int>> arrival_steps;
    std::vector<StepLogEntry> log;  // filled when keep_log
};

struct Scenario {
    std::string id;
    GridMap map;
    std::vector<Coord> starts;
    std::vector<Coord> goals;
    int max_steps = kDefaultMaxStepsEval;
    uint64_t seed = 0;
    std::optional<JointPlan> plan;  // optional precomputed plan for replay
};

Policy make_idle_policy();
Policy make_plan_replay_policy(JointPlan plan);

// Plans with prioritized_plan at the scenario's seed; if planning fails the
// episode falls back to all-idle (and will time out).
Policy make_prioritized_policy(const Scenario& scenario);

EpisodeRecord run_episode(const Scenario& scenario, const Policy& policy, bool keep_log = false);

// Steps until the last arrival; max_steps when the episode timed out.
int makespan(const EpisodeRecord& record);

// These throw std::invalid_argument on an empty record set.
double success_rate(const std::vector<EpisodeRecord>& records);
double arrival_rate(const std::vector<EpisodeRecord>& records);
double episode_length(const std::vector<EpisodeRecord>& records);

struct AggregateMetrics {
    double ms = 0;  // mean makespan
    double sr = 0;
    double ar = 0;
    double el = 0;
};

AggregateMetrics aggregate_metrics(const std::vector<EpisodeRecord>& records);

enum class PolicyKind { prioritized, idle, replay };
PolicyKind policy_kind_from_name(const std::string& name);

// Runs every scenario (concurrently up to `threads`; 0 = hardware default,
// capped by the ALPHA_MAPF_THREADS environment variable) and returns records
// in scenario order, so output never depends on scheduling.
std::vector<EpisodeRecord> run_batch(const std::vector<Scenario>& scenarios, PolicyKind kind,
                                     int threads = 0, bool keep_logs = false);

}  // namespace alpha
