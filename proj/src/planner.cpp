#include "alpha/planner.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "alpha/pathfind.hpp"

namespace alpha {

namespace {

struct Reservations {
    int width = 0;
    std::unordered_set<int64_t> vertex;      // (cell, t)
    std::unordered_set<int64_t> edge;        // directed (from, to, t): occupied from t to t+1
    std::unordered_map<int64_t, int> parked;  // cell -> parked-from time

    int64_t vkey(Coord c, int t) const { return (int64_t(t) << 24) | (int64_t(c.y) << 12) | c.x; }
    int64_t ekey(Coord a, Coord b, int t) const {
        return (((int64_t(t) << 12 | a.y) << 12 | a.x) << 12 | b.y) << 12 | b.x;
    }

    bool vertex_free(Coord c, int t) const {
        if (vertex.count(vkey(c, t))) return false;
        const auto p = parked.find(int64_t(c.y) << 12 | c.x);
        return p == parked.end() || t < p->second;
    }
    bool move_free(Coord from, Coord to, int t) const {
        // the reverse edge in the same step is the swap conflict
        return !edge.count(ekey(to, from, t));
    }
};

struct SpaceTimeNode {
    int f, h, t;
    int y, x;
    uint64_t seq;
};
struct SpaceTimeOrder {
    bool operator()(const SpaceTimeNode& a, const SpaceTimeNode& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.h != b.h) return a.h > b.h;
        if (a.y != b.y) return a.y > b.y;
        if (a.x != b.x) return a.x > b.x;
        return a.seq > b.seq;
    }
};

// A* over (cell, time). Goal: stand on the goal cell at a time from which no
// reservation ever touches it again.
std::optional<std::vector<Coord>> plan_single(const GridMap& map, Coord start, Coord goal,
                                              int max_steps, const Reservations& res,
                                              const std::vector<int>& goal_dist) {
    const int w = map.width();
    auto heur = [&](Coord c) { return goal_dist[map.idx(c)]; };
    if (heur(start) < 0) return std::nullopt;

    // last time the goal cell is vertex-reserved by someone else
    int goal_clear_after = -1;
    for (int t = 0; t <= max_steps; ++t)
        if (!res.vertex_free(goal, t))
            goal_clear_after = t;

    const size_t span = size_t(max_steps + 1) * w * map.height();
    std::vector<int32_t> parent(span, -2);
    auto skey = [&](Coord c, int t) { return (size_t(t) * map.height() + c.y) * w + c.x; };

    std::priority_queue<SpaceTimeNode, std::vector<SpaceTimeNode>, SpaceTimeOrder> open;
    uint64_t seq = 0;
    if (!res.vertex_free(start, 0)) return std::nullopt;
    open.push({heur(start), heur(start), 0, start.y, start.x, seq++});
    parent[skey(start, 0)] = -1;

    constexpr int kDeltas[5][2] = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}, {0, 0}};
    while (!open.empty()) {
        const SpaceTimeNode node = open.top();
        open.pop();
        const Coord c{node.x, node.y};
        if (c == goal && node.t > goal_clear_after) {
            std::vector<Coord> path(size_t(node.t) + 1);
            int t = node.t;
            Coord cur = c;
            while (t >= 0) {
                path[size_t(t)] = cur;
                const int32_t p = parent[skey(cur, t)];
                if (p < 0) break;
                cur = Coord{int(p % w), int(p / w)};
                --t;
            }
            return path;
        }
        if (node.t >= max_steps) continue;
        for (auto& d : kDeltas) {
            const Coord n{c.x + d[0], c.y + d[1]};
            if (!map.in_bounds(n) || !map.is_free(n)) continue;
            if (heur(n) < 0) continue;
            const int nt = node.t + 1;
            if (nt + heur(n) > max_steps) continue;  // cannot arrive in time
            if (!res.vertex_free(n, nt)) continue;
            if (!res.move_free(c, n, node.t)) continue;
            auto& slot = parent[skey(n, nt)];
            if (slot != -2) continue;  // time-expanded graph: first visit is optimal in g
            slot = int32_t(c.y * w + c.x);
            open.push({nt + heur(n), heur(n), nt, n.y, n.x, seq++});
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<Action> JointPlan::actions_at(int t) const {
    std::vector<Action> out;
    out.reserve(positions.size());
    for (const auto& track : positions) {
        const Coord from = track[size_t(t)];
        const Coord to = track[size_t(t) + 1];
        Action a = Action::idle;
        if (to.x == from.x && to.y == from.y - 1) a = Action::up;
        else if (to.x == from.x && to.y == from.y + 1) a = Action::down;
        else if (to.x == from.x - 1 && to.y == from.y) a = Action::left;
        else if (to.x == from.x + 1 && to.y == from.y) a = Action::right;
        out.push_back(a);
    }
    return out;
}

PlanResult prioritized_plan(const GridMap& map, const std::vector<Coord>& starts,
                            const std::vector<Coord>& goals, int max_steps, int retries,
                            uint64_t seed) {
    if (starts.size() != goals.size() || starts.empty())
        throw std::invalid_argument("prioritized_plan: starts and goals must match");
    if (map.width() > 4095 || map.height() > 4095)
        throw std::invalid_argument("prioritized_plan: map too large for reservation keys");
    const int n = int(starts.size());

    std::vector<std::vector<int>> goal_dists(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) goal_dists[size_t(i)] = bfs_dist_field(map, goals[size_t(i)]);

    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[size_t(i)] = i;

    Rng rng(seed);
    PlanResult result;
    for (int attempt = 0; attempt <= retries; ++attempt) {
        if (attempt > 0) {
            for (int i = n - 1; i > 0; --i)
                std::swap(order[size_t(i)], order[size_t(rng.uniform_int(0, i))]);
        }

        Reservations res;
        res.width = map.width();
        std::vector<std::vector<Coord>> tracks(static_cast<size_t>(n));
        bool ok = true;
        for (int rank = 0; rank < n && ok; ++rank) {
            const int agent = order[size_t(rank)];
            auto path = plan_single(map, starts[size_t(agent)], goals[size_t(agent)], max_steps,
                                    res, goal_dists[size_t(agent)]);
            if (!path) {
                ok = false;
                result.failed_agent = agent;
                break;
            }
            for (int t = 0; t < int(path->size()); ++t) {
                res.vertex.insert(res.vkey((*path)[size_t(t)], t));
                if (t > 0) res.edge.insert(res.ekey((*path)[size_t(t) - 1], (*path)[size_t(t)], t - 1));
            }
            res.parked[int64_t(goals[size_t(agent)].y) << 12 | goals[size_t(agent)].x] =
                int(path->size()) - 1;
            tracks[size_t(agent)] = std::move(*path);
        }
        if (!ok) continue;

        int makespan = 0;
        for (const auto& track : tracks) makespan = std::max(makespan, int(track.size()) - 1);
        for (int i = 0; i < n; ++i) {
            auto& track = tracks[size_t(i)];
            while (int(track.size()) - 1 < makespan) track.push_back(goals[size_t(i)]);
        }
        result.ok = true;
        result.plan.positions = std::move(tracks);
        result.plan.makespan = makespan;
        result.failed_agent = -1;
        return result;
    }
    return result;
}

}  // namespace alpha
