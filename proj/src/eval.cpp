#include "alpha/eval.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace alpha {

Policy make_idle_policy() {
    return [](const EnvState& st) {
        return std::vector<Action>(size_t(st.num_agents()), Action::idle);
    };
}

Policy make_plan_replay_policy(JointPlan plan) {
    return [plan = std::move(plan)](const EnvState& st) {
        if (st.step < plan.makespan) return plan.actions_at(st.step);
        return std::vector<Action>(size_t(st.num_agents()), Action::idle);
    };
}

Policy make_prioritized_policy(const Scenario& sc) {
    PlanResult res = prioritized_plan(sc.map, sc.starts, sc.goals, sc.max_steps, 3, sc.seed);
    if (!res.ok) return make_idle_policy();
    return make_plan_replay_policy(std::move(res.plan));
}

EpisodeRecord run_episode(const Scenario& scenario, const Policy& policy, bool keep_log) {
    EnvState st = reset(scenario.map, scenario.starts, scenario.goals, scenario.max_steps);
    const int n = st.num_agents();

    EpisodeRecord rec;
    rec.scenario_id = scenario.id;
    rec.n_agents = n;
    rec.max_steps = scenario.max_steps;
    rec.arrival_steps.assign(size_t(n), std::nullopt);
    for (int i = 0; i < n; ++i)
        if (st.positions[size_t(i)] == st.goals[size_t(i)]) rec.arrival_steps[size_t(i)] = 0;

    EpisodeStatus status = is_done(st);
    while (status == EpisodeStatus::running) {
        const std::vector<Action> actions = policy(st);
        if (int(actions.size()) != n)
            throw std::runtime_error("run_episode: policy emitted a malformed action vector");
        const StepOutcome out = step_joint(st, actions);

        for (int i = 0; i < n; ++i) {
            if (st.positions[size_t(i)] == st.goals[size_t(i)]) {
                if (!rec.arrival_steps[size_t(i)]) rec.arrival_steps[size_t(i)] = st.step;
            } else {
                rec.arrival_steps[size_t(i)] = std::nullopt;
            }
        }
        if (keep_log) {
            StepLogEntry e;
            e.step = st.step;
            e.positions = st.positions;
            for (int i = 0; i < n; ++i) {
                e.actions.push_back(out.agents[size_t(i)].executed);
                e.rewards.push_back(out.agents[size_t(i)].reward);
                e.collided.push_back(out.agents[size_t(i)].collided ? 1 : 0);
                e.eta.push_back(out.agents[size_t(i)].blocking_eta);
            }
            rec.log.push_back(std::move(e));
        }
        status = out.status;
    }
    rec.status = status;
    rec.steps = st.step;
    return rec;
}

int makespan(const EpisodeRecord& record) {
    if (record.status != EpisodeStatus::success) return record.max_steps;
    int last = 0;
    for (const auto& a : record.arrival_steps) last = std::max(last, a.value_or(0));
    return last;
}

double success_rate(const std::vector<EpisodeRecord>& records) {
    if (records.empty()) throw std::invalid_argument("success_rate: empty record set");
    int s = 0;
    for (const auto& r : records)
        if (r.status == EpisodeStatus::success) ++s;
    return double(s) / double(records.size());
}

double arrival_rate(const std::vector<EpisodeRecord>& records) {
    if (records.empty()) throw std::invalid_argument("arrival_rate: empty record set");
    int64_t arrived = 0, total = 0;
    for (const auto& r : records) {
        total += r.n_agents;
        for (const auto& a : r.arrival_steps)
            if (a.has_value()) ++arrived;
    }
    return double(arrived) / double(total);
}

double episode_length(const std::vector<EpisodeRecord>& records) {
    if (records.empty()) throw std::invalid_argument("episode_length: empty record set");
    double acc = 0;
    for (const auto& r : records)
        acc += r.status == EpisodeStatus::success ? double(r.steps) : double(r.max_steps);
    return acc / double(records.size());
}

AggregateMetrics aggregate_metrics(const std::vector<EpisodeRecord>& records) {
    AggregateMetrics m;
    double ms = 0;
    for (const auto& r : records) ms += makespan(r);
    m.ms = ms / double(records.size());
    m.sr = success_rate(records);
    m.ar = arrival_rate(records);
    m.el = episode_length(records);
    return m;
}

PolicyKind policy_kind_from_name(const std::string& name) {
    if (name == "prioritized") return PolicyKind::prioritized;
    if (name == "idle") return PolicyKind::idle;
    if (name == "replay") return PolicyKind::replay;
    throw std::invalid_argument("unknown policy: " + name);
}

namespace {

int resolve_threads(int requested, int n_jobs) {
    int t = requested > 0 ? requested : int(std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("ALPHA_MAPF_THREADS")) {
        const int c = std::atoi(cap);
        if (c > 0) t = std::min(t, c);
    }
    return std::max(1, std::min(t, n_jobs));
}

Policy policy_for(const Scenario& sc, PolicyKind kind) {
    switch (kind) {
        case PolicyKind::idle:
            return make_idle_policy();
        case PolicyKind::prioritized:
            return make_prioritized_policy(sc);
        case PolicyKind::replay:
            if (!sc.plan)
                throw std::invalid_argument("replay policy requires a plan in scenario " + sc.id);
            return make_plan_replay_policy(*sc.plan);
    }
    return make_idle_policy();
}

}  // namespace

std::vector<EpisodeRecord> run_batch(const std::vector<Scenario>& scenarios, PolicyKind kind,
                                     int threads, bool keep_logs) {
    std::vector<EpisodeRecord> records(scenarios.size());
    const int workers = resolve_threads(threads, int(scenarios.size()));
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::atomic<bool> failed{false};
    std::string error;
    std::mutex error_mutex;

    auto work = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= scenarios.size() || failed.load()) return;
            try {
                records[i] = run_episode(scenarios[i], policy_for(scenarios[i], kind), keep_logs);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error = e.what();
                failed.store(true);
                return;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("run_batch: " + error);
    return records;
}

}  // namespace alpha
