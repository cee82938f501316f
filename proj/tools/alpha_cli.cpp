// alpha-mapf command-line tool: map generation, graph extraction, feature
// dumps, evaluation, attention dumps, and raster renders. All artifacts are
// reproducible from (argv, seed); exit codes: 0 ok, 1 runtime failure,
// 2 usage error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "alpha/json_io.hpp"
#include "alpha/map_gen.hpp"
#include "alpha/render.hpp"

namespace fs = std::filesystem;
using namespace alpha;

namespace {

ThinMethod method_from_name(const std::string& name) {
    if (name == "mat") return ThinMethod::medial_axis;
    if (name == "zs") return ThinMethod::zhang_suen;
    throw CLI::ValidationError("--method", "expected 'mat' or 'zs'");
}

GridMap load_map_file(const fs::path& path) {
    const std::string text = read_text_file(path);
    if (path.extension() == ".json") return map_from_json(Json::parse(text));
    return parse_map(text);
}

Scenario load_scenario_file(const fs::path& path) {
    const Json j = Json::parse(read_text_file(path));
    return scenario_from_json(j, path.parent_path(), path.stem().string());
}

int run(int argc, char** argv) {
    CLI::App app{"alpha-mapf toolkit"};
    app.require_subcommand(1);

    // ---- gen-map ----
    auto* gen = app.add_subcommand("gen-map", "generate a map file");
    std::string gen_kind;
    std::vector<int> gen_size;
    double gen_density = 0.3;
    uint64_t gen_seed = 0;
    std::string gen_out;
    std::string gen_format = "map";
    RoomGenParams room_params;
    gen->add_option("--kind", gen_kind, "room|random")->required();
    gen->add_option("--size", gen_size, "width height")->expected(2)->required();
    gen->add_option("--density", gen_density, "obstacle density (random maps)");
    gen->add_option("--seed", gen_seed, "generator seed")->required();
    gen->add_option("-o,--out", gen_out, "output path")->required();
    gen->add_option("--format", gen_format, "map|json");
    gen->add_option("--min-room", room_params.min_room_side, "room maps: smallest room side");
    gen->add_option("--max-room", room_params.max_room_side, "room maps: largest room side");
    gen->add_option("--door-width", room_params.door_width, "room maps: door gap lower bound");
    gen->add_option("--corridor-min", room_params.corridor_width_min, "room maps: corridor width min");
    gen->add_option("--corridor-max", room_params.corridor_width_max, "room maps: corridor width max");

    // ---- extract-graph ----
    auto* extract = app.add_subcommand("extract-graph", "extract the skeleton graph of a map");
    std::string ex_map, ex_method = "mat", ex_out;
    extract->add_option("--map", ex_map, "map file (.map or .json)")->required();
    extract->add_option("--method", ex_method, "mat|zs");
    extract->add_option("-o,--out", ex_out, "output graph json")->required();

    // ---- features ----
    auto* feats = app.add_subcommand("features", "dump observation features for a scenario");
    std::string ft_scenario, ft_out, ft_method = "mat";
    int ft_agent = 0, ft_horizon = 10, ft_fov = 11;
    bool ft_static = false, ft_intent = false, ft_local = false, ft_all = false;
    feats->add_option("--scenario", ft_scenario, "scenario json")->required();
    feats->add_option("--agent", ft_agent, "ego agent id");
    feats->add_option("-f,--horizon", ft_horizon, "intent prediction horizon");
    feats->add_option("-F,--fov", ft_fov, "local observation size (odd)");
    feats->add_option("--method", ft_method, "skeleton method mat|zs");
    feats->add_flag("--static", ft_static, "static graph only");
    feats->add_flag("--intent", ft_intent, "intent graph only");
    feats->add_flag("--local", ft_local, "local channels only");
    feats->add_flag("--all", ft_all, "full bundle (default)");
    feats->add_option("-o,--out", ft_out, "output json")->required();

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "run scenarios and write metrics");
    std::string ev_dir, ev_policy = "prioritized", ev_out;
    int ev_threads = 0;
    bool ev_logs = false;
    eval->add_option("--scenarios", ev_dir, "directory of scenario json files")->required();
    eval->add_option("--policy", ev_policy, "prioritized|idle|replay");
    eval->add_option("--threads", ev_threads, "worker cap (0 = auto)");
    eval->add_flag("--logs", ev_logs, "write per-episode step logs");
    eval->add_option("-o,--out", ev_out, "output directory")->required();

    // ---- attn-dump ----
    auto* attn = app.add_subcommand("attn-dump", "dump attention weights for one observation");
    std::string at_scenario, at_out;
    int at_agent = 0, at_d = 8, at_heads = 8, at_focus = 2, at_self = 2, at_horizon = 10;
    uint64_t at_seed = 0;
    attn->add_option("--scenario", at_scenario, "scenario json")->required();
    attn->add_option("--agent", at_agent, "ego agent id");
    attn->add_option("--seed", at_seed, "weight seed")->required();
    attn->add_option("-d,--dim", at_d, "embedding dimension");
    attn->add_option("--heads", at_heads, "attention heads");
    attn->add_option("--focus-layers", at_focus, "attention-focusing layers");
    attn->add_option("--self-layers", at_self, "self-attention layers");
    attn->add_option("-f,--horizon", at_horizon, "intent prediction horizon");
    attn->add_option("-o,--out", at_out, "output json")->required();

    // ---- render ----
    auto* render = app.add_subcommand("render", "write a PGM/PPM raster");
    std::string rd_kind = "map", rd_map, rd_scenario, rd_method = "mat", rd_out;
    int rd_horizon = 10;
    render->add_option("--kind", rd_kind, "map|skeleton|intent");
    render->add_option("--map", rd_map, "map file (map/skeleton kinds)");
    render->add_option("--scenario", rd_scenario, "scenario json (intent kind)");
    render->add_option("--method", rd_method, "skeleton method mat|zs");
    render->add_option("-f,--horizon", rd_horizon, "intent prediction horizon");
    render->add_option("-o,--out", rd_out, "output raster path")->required();

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        GridMap map = [&] {
            if (gen_kind == "room") {
                room_params.seed = gen_seed;
                return generate_room_map(gen_size[0], gen_size[1], room_params);
            }
            if (gen_kind == "random")
                return generate_random_map(gen_size[0], gen_size[1], gen_density, gen_seed);
            throw CLI::ValidationError("--kind", "expected 'room' or 'random'");
        }();
        write_text_file(gen_out, gen_format == "json" ? map_to_json(map).dump(2) + "\n"
                                                      : serialize_map(map));
        return 0;
    }

    if (extract->parsed()) {
        const GridMap map = load_map_file(ex_map);
        const MapGraph graph = extract_graph(map, method_from_name(ex_method));
        write_text_file(ex_out, graph_to_json(graph).dump(2) + "\n");
        return 0;
    }

    if (feats->parsed()) {
        const Scenario sc = load_scenario_file(ft_scenario);
        EnvState st = reset(sc.map, sc.starts, sc.goals, sc.max_steps);
        const int chosen = int(ft_static) + int(ft_intent) + int(ft_local) + int(ft_all);
        if (chosen > 1) throw CLI::ValidationError("features", "pick at most one of --static/--intent/--local/--all");
        Json out;
        if (ft_static) {
            const MapGraph g = extract_graph(sc.map, method_from_name(ft_method));
            out = static_obs_to_json(build_static_graph(sc.map, g.nodes,
                                                        st.positions[size_t(ft_agent)],
                                                        st.goals[size_t(ft_agent)]));
        } else if (ft_intent) {
            out = intent_obs_to_json(build_intent_graph(sc.map, st.positions, st.goals, ft_horizon));
        } else if (ft_local) {
            std::vector<AgentSnapshot> agents;
            for (int i = 0; i < st.num_agents(); ++i)
                agents.push_back({st.positions[size_t(i)], st.goals[size_t(i)]});
            out = local_obs_to_json(fov_channels(sc.map, agents, ft_agent, ft_fov));
        } else {
            const MapGraph g = extract_graph(sc.map, method_from_name(ft_method));
            out = bundle_to_json(observe(st, g.nodes, ft_agent, ft_horizon, ft_fov));
        }
        write_text_file(ft_out, out.dump(2) + "\n");
        return 0;
    }

    if (eval->parsed()) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(ev_dir))
            if (entry.is_regular_file() && entry.path().extension() == ".json")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        if (files.empty()) throw std::runtime_error("no scenario files in " + ev_dir);

        std::vector<Scenario> scenarios;
        scenarios.reserve(files.size());
        for (const auto& f : files) scenarios.push_back(load_scenario_file(f));

        const auto records =
            run_batch(scenarios, policy_kind_from_name(ev_policy), ev_threads, ev_logs);
        write_text_file(fs::path(ev_out) / "results.csv", results_csv(records, scenarios));
        write_text_file(fs::path(ev_out) / "aggregate.json",
                        aggregate_to_json(aggregate_metrics(records)).dump(2) + "\n");
        if (ev_logs)
            for (const auto& r : records)
                write_text_file(fs::path(ev_out) / "logs" / (r.scenario_id + ".json"),
                                episode_to_json(r).dump(2) + "\n");
        return 0;
    }

    if (attn->parsed()) {
        const Scenario sc = load_scenario_file(at_scenario);
        EnvState st = reset(sc.map, sc.starts, sc.goals, sc.max_steps);
        const MapGraph g = extract_graph(sc.map, ThinMethod::medial_axis);
        const ObservationBundle bundle = observe(st, g.nodes, at_agent, at_horizon, 11);

        EncoderConfig static_cfg;
        static_cfg.input_dim = 5;
        static_cfg.d = at_d;
        static_cfg.heads = at_heads;
        static_cfg.n_focus = at_focus;
        static_cfg.n_self = at_self;
        EncoderConfig intent_cfg = static_cfg;
        intent_cfg.input_dim = 9;

        Matrix static_rows(int(bundle.static_graph.rows.size()), 5);
        for (int i = 0; i < static_rows.rows(); ++i) {
            const auto& r = bundle.static_graph.rows[size_t(i)];
            static_rows.row(i) << r.x, r.y, r.d_na, r.d_dg, r.d_od;
        }
        Matrix intent_rows(int(bundle.intent_graph.rows.size()), 9);
        for (int i = 0; i < intent_rows.rows(); ++i) {
            const auto arr = bundle.intent_graph.rows[size_t(i)].to_array();
            for (int j = 0; j < 9; ++j) intent_rows(i, j) = arr[size_t(j)];
        }

        AttentionTrace static_trace, intent_trace;
        encode(static_rows, bundle.static_graph.ego_index,
               EncoderParams::seeded(static_cfg, at_seed), &static_trace);
        encode(intent_rows, at_agent, EncoderParams::seeded(intent_cfg, at_seed ^ 1),
               &intent_trace);

        const Json out{{"static", attention_trace_to_json(static_trace)},
                       {"intent", attention_trace_to_json(intent_trace)}};
        write_text_file(at_out, out.dump(2) + "\n");
        return 0;
    }

    if (render->parsed()) {
        if (rd_kind == "map") {
            if (rd_map.empty()) throw CLI::ValidationError("render", "--map required for kind=map");
            write_text_file(rd_out, render_map_pgm(load_map_file(rd_map)));
        } else if (rd_kind == "skeleton") {
            if (rd_map.empty())
                throw CLI::ValidationError("render", "--map required for kind=skeleton");
            const GridMap map = load_map_file(rd_map);
            const MapGraph g = extract_graph(map, method_from_name(rd_method));
            write_text_file(rd_out, render_skeleton_ppm(map, g.skeleton, g.nodes));
        } else if (rd_kind == "intent") {
            if (rd_scenario.empty())
                throw CLI::ValidationError("render", "--scenario required for kind=intent");
            const Scenario sc = load_scenario_file(rd_scenario);
            const auto intents = build_intent_graph(sc.map, sc.starts, sc.goals, rd_horizon);
            write_text_file(rd_out, render_intent_ppm(sc.map, intents));
        } else {
            throw CLI::ValidationError("--kind", "expected map|skeleton|intent");
        }
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
