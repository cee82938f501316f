#include "alpha/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace alpha {

namespace {

Json coord_to_json(Coord c) { return Json::array({c.x, c.y}); }

Coord coord_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected a coordinate pair [x, y]");
    return {j[0].get<int>(), j[1].get<int>()};
}

const char* status_name(EpisodeStatus s) {
    switch (s) {
        case EpisodeStatus::success: return "success";
        case EpisodeStatus::timeout: return "timeout";
        case EpisodeStatus::running: return "running";
    }
    return "?";
}

}  // namespace

Json map_to_json(const GridMap& map) {
    Json rows = Json::array();
    for (int y = 0; y < map.height(); ++y) {
        std::string row;
        for (int x = 0; x < map.width(); ++x) row.push_back(map.is_obstacle({x, y}) ? '#' : '.');
        rows.push_back(row);
    }
    return Json{{"width", map.width()}, {"height", map.height()}, {"rows", rows}};
}

GridMap map_from_json(const Json& j) {
    std::string text;
    for (const auto& row : j.at("rows")) text += row.get<std::string>() + "\n";
    GridMap m = parse_map(text);
    if (j.contains("width") && j.at("width").get<int>() != m.width())
        throw std::invalid_argument("map json: width does not match rows");
    if (j.contains("height") && j.at("height").get<int>() != m.height())
        throw std::invalid_argument("map json: height does not match rows");
    return m;
}

Json graph_to_json(const MapGraph& graph) {
    Json nodes = Json::array();
    for (const auto& n : graph.nodes)
        nodes.push_back(Json{{"x", n.pos.x},
                             {"y", n.pos.y},
                             {"kind", n.kind == NodeKind::branch ? "branch" : "leaf"}});
    Json edges = Json::array();
    for (const auto& e : graph.edges)
        edges.push_back(Json{{"a", e.a}, {"b", e.b}, {"len", e.length}});
    return Json{{"nodes", nodes}, {"edges", edges}};
}

Json static_obs_to_json(const StaticGraphObs& obs) {
    Json rows = Json::array();
    for (const auto& r : obs.rows) rows.push_back(Json::array({r.x, r.y, r.d_na, r.d_dg, r.d_od}));
    return Json{{"rows", rows},
                {"ego_index", obs.ego_index},
                {"goal_index", obs.goal_index},
                {"unreachable_excluded", obs.unreachable_excluded}};
}

Json intent_obs_to_json(const IntentGraphObs& obs) {
    Json rows = Json::array();
    Json unreachable = Json::array();
    for (const auto& r : obs.rows) {
        const auto arr = r.to_array();
        rows.push_back(Json(arr));
        unreachable.push_back(r.goal_unreachable);
    }
    return Json{{"rows", rows}, {"goal_unreachable", unreachable}};
}

Json local_obs_to_json(const LocalObs& obs) {
    Json channels = Json::array();
    for (const auto& ch : obs.channels) channels.push_back(Json(ch));
    return Json{{"fov", obs.fov},
                {"channels", channels},
                {"goal_vec", Json::array({obs.goal_vec.dx, obs.goal_vec.dy, obs.goal_vec.mag})}};
}

Json bundle_to_json(const ObservationBundle& bundle) {
    return Json{{"ego_id", bundle.ego_id},
                {"local", local_obs_to_json(bundle.local)},
                {"static_graph", static_obs_to_json(bundle.static_graph)},
                {"intent_graph", intent_obs_to_json(bundle.intent_graph)}};
}

Scenario scenario_from_json(const Json& j, const std::filesystem::path& base_dir,
                            const std::string& fallback_id) {
    const Json& map_field = j.at("map");
    GridMap map = map_field.is_string()
                      ? parse_map(read_text_file(base_dir / map_field.get<std::string>()))
                      : map_from_json(map_field);

    Scenario sc{.id = j.value("id", fallback_id), .map = std::move(map)};
    for (const auto& s : j.at("starts")) sc.starts.push_back(coord_from_json(s));
    for (const auto& g : j.at("goals")) sc.goals.push_back(coord_from_json(g));
    sc.max_steps = j.value("max_steps", kDefaultMaxStepsEval);
    sc.seed = j.value("seed", uint64_t(0));
    if (j.contains("plan")) {
        JointPlan plan;
        for (const auto& track : j.at("plan")) {
            std::vector<Coord> cells;
            for (const auto& c : track) cells.push_back(coord_from_json(c));
            plan.positions.push_back(std::move(cells));
        }
        if (plan.positions.empty() || plan.positions[0].empty())
            throw std::invalid_argument("scenario plan must be non-empty");
        plan.makespan = int(plan.positions[0].size()) - 1;
        sc.plan = std::move(plan);
    }
    return sc;
}

Json scenario_to_json(const Scenario& sc) {
    Json j{{"id", sc.id},
           {"map", map_to_json(sc.map)},
           {"max_steps", sc.max_steps},
           {"seed", sc.seed}};
    Json starts = Json::array(), goals = Json::array();
    for (const auto& s : sc.starts) starts.push_back(coord_to_json(s));
    for (const auto& g : sc.goals) goals.push_back(coord_to_json(g));
    j["starts"] = starts;
    j["goals"] = goals;
    if (sc.plan) {
        Json plan = Json::array();
        for (const auto& track : sc.plan->positions) {
            Json cells = Json::array();
            for (const auto& c : track) cells.push_back(coord_to_json(c));
            plan.push_back(cells);
        }
        j["plan"] = plan;
    }
    return j;
}

Json episode_to_json(const EpisodeRecord& record) {
    Json arrivals = Json::array();
    for (const auto& a : record.arrival_steps)
        arrivals.push_back(a ? Json(*a) : Json(nullptr));
    Json log = Json::array();
    for (const auto& e : record.log) {
        Json actions = Json::array(), positions = Json::array();
        for (const auto& a : e.actions) actions.push_back(action_name(a));
        for (const auto& p : e.positions) positions.push_back(coord_to_json(p));
        log.push_back(Json{{"step", e.step},
                           {"actions", actions},
                           {"rewards", e.rewards},
                           {"positions", positions},
                           {"collisions", e.collided},
                           {"eta", e.eta}});
    }
    return Json{{"scenario_id", record.scenario_id},
                {"n_agents", record.n_agents},
                {"status", status_name(record.status)},
                {"steps", record.steps},
                {"arrivals", arrivals},
                {"log", log}};
}

Json aggregate_to_json(const AggregateMetrics& m) {
    return Json{{"MS", m.ms}, {"SR", m.sr}, {"AR", m.ar}, {"EL", m.el}};
}

std::string results_csv(const std::vector<EpisodeRecord>& records,
                        const std::vector<Scenario>& scenarios) {
    std::ostringstream out;
    out << "scenario_id,n_agents,map_size,status,makespan\n";
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const auto& sc = scenarios[i];
        out << r.scenario_id << ',' << r.n_agents << ',' << sc.map.width() << 'x'
            << sc.map.height() << ',' << status_name(r.status) << ',' << makespan(r) << '\n';
    }
    return out.str();
}

Json attention_trace_to_json(const AttentionTrace& trace) {
    Json alphas = Json::array();
    for (const auto& a : trace.focus_alphas) {
        Json row = Json::array();
        for (int i = 0; i < a.size(); ++i) row.push_back(a(i));
        alphas.push_back(row);
    }
    Json layers = Json::array();
    for (const auto& layer : trace.self_betas) {
        Json heads = Json::array();
        for (const auto& beta : layer) {
            Json mat = Json::array();
            for (int i = 0; i < beta.rows(); ++i) {
                Json row = Json::array();
                for (int j = 0; j < beta.cols(); ++j) row.push_back(beta(i, j));
                mat.push_back(row);
            }
            heads.push_back(mat);
        }
        layers.push_back(heads);
    }
    return Json{{"focus_alphas", alphas}, {"self_betas", layers}};
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

}  // namespace alpha
