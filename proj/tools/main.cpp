#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "citywalk/canonical_json.hpp"
#include "citywalk/cleaning.hpp"
#include "citywalk/errors.hpp"
#include "citywalk/eval.hpp"
#include "citywalk/navigators.hpp"
#include "citywalk/providers.hpp"
#include "citywalk/reporting.hpp"
#include "citywalk/rng.hpp"
#include "citywalk/routing.hpp"
#include "citywalk/serialization.hpp"
#include "citywalk/suite.hpp"
#include "citywalk/vln_eval.hpp"
#include "citywalk/worldgen.hpp"

namespace fs = std::filesystem;
using namespace citywalk;

namespace {

// Exit codes: 1 config/schema, 2 I/O, 3 provider, 4 engine.
constexpr int kExitConfig = 1;
constexpr int kExitIo = 2;
constexpr int kExitProvider = 3;
constexpr int kExitEngine = 4;

struct WorldSourceOptions {
    std::string world_file;
    std::uint64_t gen_seed = 1;
    int gen_nodes = 0;  // > 0 selects the generator
    double gen_spacing = 12.0;
    double gen_place_density = 0.4;
    double gen_instance_density = 0.25;
    double gen_web_fraction = 0.85;
    std::string types_file;
};

void add_world_source_flags(CLI::App* cmd, WorldSourceOptions& o) {
    cmd->add_option("--world", o.world_file, "World file to load");
    cmd->add_option("--gen-nodes", o.gen_nodes, "Generate a world with this many nodes");
    cmd->add_option("--world-seed", o.gen_seed, "Generator seed");
    cmd->add_option("--gen-spacing", o.gen_spacing, "Street node spacing, meters");
    cmd->add_option("--gen-place-density", o.gen_place_density, "Places per node");
    cmd->add_option("--gen-instance-density", o.gen_instance_density, "Instances per node");
    cmd->add_option("--gen-web-fraction", o.gen_web_fraction, "Web-visible edge fraction");
    cmd->add_option("--types", o.types_file, "Place-type vocabulary file (one per line)");
}

std::vector<std::string> load_vocabulary_file(const std::string& path) {
    std::vector<std::string> vocab;
    std::istringstream in(read_text_file(path));
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) vocab.push_back(line);
    }
    return vocab;
}

World resolve_world(const WorldSourceOptions& o) {
    if (!o.world_file.empty()) {
        return load_world(read_text_file(o.world_file));
    }
    if (o.gen_nodes <= 0) {
        throw Error("no world source: pass --world FILE or --gen-nodes N");
    }
    GeneratorParams params(make_square_area(GeoCoordinate(40.72, -74.0), o.gen_nodes,
                                            o.gen_spacing));
    params.node_count = o.gen_nodes;
    params.node_spacing_m = o.gen_spacing;
    params.place_density = o.gen_place_density;
    params.instance_density = o.gen_instance_density;
    params.web_visibility_fraction = o.gen_web_fraction;
    if (!o.types_file.empty()) params.vocabulary = load_vocabulary_file(o.types_file);
    return generate_world(o.gen_seed, params);
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot write file: " + dir);
}

ProviderConfig build_provider_config(const std::string& kind, const std::string& endpoint,
                                     int timeout_ms, std::uint64_t seed) {
    ProviderConfig cfg;
    cfg.kind = provider_kind_from_string(kind);
    cfg.noisy_detector.seed = hash_combine(seed, stable_hash("detector"));
    cfg.simulated_matcher.seed = hash_combine(seed, stable_hash("matcher"));
    cfg.external.endpoint = endpoint;
    cfg.external.timeout_ms = timeout_ms;
    if (const char* token = std::getenv("CITYWALK_PROVIDER_TOKEN")) {
        cfg.external.auth_token = token;
    }
    return cfg;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

// --- world subcommands ------------------------------------------------------

int cmd_world_generate(const WorldSourceOptions& src, const std::string& out_file) {
    WorldSourceOptions opts = src;
    if (opts.gen_nodes <= 0) opts.gen_nodes = 100;
    opts.world_file.clear();
    const World w = resolve_world(opts);
    write_text_file(out_file, save_world(w));
    std::cout << "world: " << w.nodes().size() << " nodes, " << w.places().size()
              << " places, " << w.instances().size() << " instances -> " << out_file
              << "\n";
    return 0;
}

int cmd_world_validate(const std::string& world_file) {
    load_world(read_text_file(world_file));
    std::cout << "ok: " << world_file << "\n";
    return 0;
}

int cmd_world_stats(const std::string& world_file, const std::string& suite_file) {
    const World w = load_world(read_text_file(world_file));
    struct Bucket {
        int nodes = 0, places = 0, instances = 0;
    };
    std::map<std::string, Bucket> buckets;
    std::vector<std::pair<std::string, GeoPolygon>> regions;
    if (!suite_file.empty()) {
        const auto suite = suite_from_json(Json::parse(read_text_file(suite_file)));
        for (const auto& r : suite.regions) regions.emplace_back(r.id, region_polygon(r));
    }
    auto bucket_of = [&](const GeoCoordinate& c) -> std::string {
        for (const auto& [id, poly] : regions) {
            if (point_in_polygon(c, poly)) return id;
        }
        return "all";
    };
    for (const auto& [id, n] : w.nodes()) ++buckets[bucket_of(n.coord)].nodes;
    for (const auto& [id, p] : w.places()) ++buckets[bucket_of(p.coord)].places;
    for (const auto& [id, o] : w.instances()) ++buckets[bucket_of(o.coord)].instances;
    std::cout << "region nodes places instances\n";
    for (const auto& [region, b] : buckets) {
        std::cout << region << " " << b.nodes << " " << b.places << " " << b.instances
                  << "\n";
    }
    return 0;
}

// --- run tasks ---------------------------------------------------------------

struct RunOptions {
    WorldSourceOptions world;
    std::string task;
    std::uint64_t seed = 1;
    std::string provider = "oracle";
    std::string policy = "scripted";
    std::string endpoint;
    int timeout_ms = 5000;
    std::string out_dir = "out";
    int workers = 0;
    double threshold_m = kVlnSuccessRadiusM;
    // suite shape
    int n_routes = 18;
    int n_regions = 9;
    int n_vqa = 40;
    std::string suite_file;
    // task-specific
    std::string start_node;
    std::string waypoints_csv;
    std::string categories_csv;
    // cleaning
    double clean_distance_m = 100.0;
    int clean_min_reviews = 1;
    double clean_image_threshold = 0.3;
};

BenchmarkSuite resolve_suite(const RunOptions& o, const World& w) {
    if (!o.suite_file.empty()) {
        return suite_from_json(Json::parse(read_text_file(o.suite_file)));
    }
    SuiteParams params;
    params.n_routes = o.n_routes;
    params.n_regions = o.n_regions;
    params.n_vqa_items = o.n_vqa;
    return generate_benchmark_suite(w, o.seed, params);
}

int task_route_optimize(const RunOptions& o, const World& w) {
    if (o.start_node.empty() || o.waypoints_csv.empty()) {
        throw Error("route-optimize needs --start and --waypoints");
    }
    const auto waypoints = split_csv(o.waypoints_csv);
    const auto plan = optimize_waypoint_order(w, o.start_node, waypoints);

    // In-order baseline for the savings figure.
    std::vector<std::string> full{o.start_node};
    for (const auto& id : waypoints) {
        auto leg = shortest_path(w, full.back(), id);
        if (!leg) throw Unreachable("waypoint unreachable: " + id);
        full.insert(full.end(), leg->begin() + 1, leg->end());
    }
    const Route inorder = make_route_from_path(w, full);

    const double t_opt = estimate_travel_time(plan.route, plan.route.mode);
    const double t_inorder = estimate_travel_time(inorder, inorder.mode);

    ensure_dir(o.out_dir);
    write_text_file(o.out_dir + "/route.json",
                    canonical_dump(route_to_json(plan.route)) + "\n");
    Json summary{{"ordering", plan.ordering},
                 {"optimized_length_m", plan.route.total_length},
                 {"inorder_length_m", inorder.total_length},
                 {"optimized_time_s", t_opt},
                 {"inorder_time_s", t_inorder},
                 {"time_saved_s", t_inorder - t_opt}};
    write_text_file(o.out_dir + "/summary.json", canonical_dump(summary) + "\n");

    std::cout << "visit order:";
    for (const auto& id : plan.ordering) std::cout << " " << id;
    std::cout << "\nshortest " << plan.route.total_length << " m vs in-order "
              << inorder.total_length << " m; saves " << (t_inorder - t_opt)
              << " s on foot\n";
    return 0;
}

int task_vln(const RunOptions& o, const World& w) {
    const BenchmarkSuite suite = resolve_suite(o, w);
    const ProviderConfig pcfg =
        build_provider_config(o.provider, o.endpoint, o.timeout_ms, o.seed);
    VlnRunConfig run_cfg;
    run_cfg.success_radius_m = o.threshold_m;

    const int n = static_cast<int>(suite.routes.size());
    std::vector<VlnEpisodeRecord> records(n);
    const int workers =
        o.workers > 0 ? o.workers
                      : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(std::max(1, workers));
    for (int t = 0; t < std::max(1, std::min(workers, n)); ++t) {
        pool.emplace_back([&, t] {
            try {
                // Providers are per-worker; all randomness is hash-seeded, so
                // scheduling cannot change the results.
                auto detector = make_detector(pcfg, w);
                std::unique_ptr<ChooseProvider> chooser;
                for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    const SuiteRoute& sr = suite.routes[i];
                    std::unique_ptr<VlnPolicy> policy;
                    if (o.policy == "scripted") {
                        policy = std::make_unique<ScriptedVlnPolicy>();
                    } else if (o.policy == "external") {
                        if (!chooser) chooser = make_chooser(pcfg);
                        policy = std::make_unique<ProviderVlnPolicy>(*chooser);
                    } else {
                        throw Error("unknown policy: " + o.policy);
                    }
                    records[i] = run_vln_episode(w, sr.route, sr.instruction, *detector,
                                                 *policy, run_cfg);
                }
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    ensure_dir(o.out_dir);
    std::vector<Json> lines;
    std::map<std::string, std::vector<VlnEpisodeRecord>> by_region;
    for (int i = 0; i < n; ++i) {
        lines.push_back(vln_record_to_json(records[i], suite.routes[i].region_id));
        by_region[suite.routes[i].region_id].push_back(records[i]);
    }
    write_jsonl(o.out_dir + "/vln_records.jsonl", lines);

    const VLNReport overall = aggregate_vln(records);
    Json aggregate{{"overall", vln_report_to_json(overall)}};
    Json regions = Json::object();
    for (const auto& [region, recs] : by_region) {
        regions[region] = vln_report_to_json(aggregate_vln(recs));
    }
    aggregate["regions"] = std::move(regions);
    write_text_file(o.out_dir + "/vln_aggregate.json", canonical_dump(aggregate) + "\n");

    std::cout << "vln: " << n << " routes, success " << overall.success
              << ", intersection arr " << overall.intersection_arr << ", stop reac "
              << overall.stop_reac << "\n";
    return 0;
}

int task_detect_bench(const RunOptions& o, const World& w) {
    const BenchmarkSuite suite = resolve_suite(o, w);
    const ProviderConfig pcfg =
        build_provider_config(o.provider, o.endpoint, o.timeout_ms, o.seed);
    auto detector = make_detector(pcfg, w);

    std::vector<std::string> categories = split_csv(o.categories_csv);
    std::vector<Json> lines;
    std::vector<DetectionReport> reports;
    for (const auto& region : suite.regions) {
        const GeoPolygon poly = region_polygon(region);
        const auto gt = places_in_region(w, poly);
        std::vector<std::string> cats = categories;
        if (cats.empty()) {
            std::set<std::string> present;
            for (const auto& p : gt) present.insert(p.types.front());
            cats.assign(present.begin(), present.end());
        }
        if (cats.empty()) continue;
        const auto results = detection_sweep(w, poly, cats, *detector);
        DetectionReport rep = eval_detection(results, gt, cats, region.id);
        lines.push_back(detection_report_to_json(rep));
        reports.push_back(std::move(rep));
    }
    ensure_dir(o.out_dir);
    write_jsonl(o.out_dir + "/detection_reports.jsonl", lines);
    write_text_file(o.out_dir + "/detection.csv", detection_csv(reports));

    double ar_sum = 0.0;
    int ar_n = 0;
    for (const auto& r : reports) {
        if (auto ar = r.average_recall()) {
            ar_sum += *ar;
            ++ar_n;
        }
    }
    std::cout << "detect-bench: " << reports.size() << " regions, mean AR "
              << (ar_n ? ar_sum / ar_n : 0.0) << "\n";
    return 0;
}

int task_region_sweep(const RunOptions& o, const World& w) {
    const BenchmarkSuite suite = resolve_suite(o, w);
    const ProviderConfig pcfg =
        build_provider_config(o.provider, o.endpoint, o.timeout_ms, o.seed);
    auto detector = make_detector(pcfg, w);
    auto matcher = make_matcher(pcfg, w);

    std::vector<std::string> categories = split_csv(o.categories_csv);
    if (categories.empty()) categories = default_instance_categories();

    std::vector<Json> lines;
    for (const auto& region : suite.regions) {
        const GeoPolygon poly = region_polygon(region);
        const CountReport counts = counting_sweep(w, poly, categories, *detector, *matcher);
        std::map<std::string, int> gt;
        for (const auto& [id, inst] : w.instances()) {
            if (point_in_polygon(inst.coord, poly)) ++gt[inst.category];
        }
        Json per_cat = Json::object();
        for (const auto& c : categories) {
            const auto found = counts.per_category.find(c);
            per_cat[c] =
                Json{{"counted", found == counts.per_category.end() ? 0 : found->second},
                     {"ground_truth", gt.count(c) ? gt.at(c) : 0}};
        }
        lines.push_back(Json{{"kind", "region_count"},
                             {"region", region.id},
                             {"total_groups", counts.total_groups},
                             {"categories", std::move(per_cat)}});
    }
    ensure_dir(o.out_dir);
    write_jsonl(o.out_dir + "/region_counts.jsonl", lines);
    std::cout << "region-sweep: " << lines.size() << " regions -> " << o.out_dir
              << "/region_counts.jsonl\n";
    return 0;
}

int task_vqa_bench(const RunOptions& o, const World& w) {
    const BenchmarkSuite suite = resolve_suite(o, w);
    const ProviderConfig pcfg =
        build_provider_config(o.provider, o.endpoint, o.timeout_ms, o.seed);
    auto chooser = make_chooser(pcfg);

    std::map<std::string, std::vector<int>> by_region;
    for (size_t i = 0; i < suite.vqa_items.size(); ++i) {
        const std::string region =
            i < suite.vqa_regions.size() ? suite.vqa_regions[i] : "all";
        by_region[region].push_back(static_cast<int>(i));
    }
    std::vector<Json> lines;
    std::map<std::string, VqaReport> reports;
    for (const auto& [region, indices] : by_region) {
        std::vector<VQAItem> items;
        for (int i : indices) items.push_back(suite.vqa_items[i]);
        VqaReport rep = eval_vqa_circular(*chooser, items);
        for (size_t k = 0; k < indices.size(); ++k) {
            lines.push_back(Json{{"kind", "vqa_item"},
                                 {"region", region},
                                 {"item", indices[k]},
                                 {"plain_correct", rep.per_item[k].plain_correct},
                                 {"circular_correct", rep.per_item[k].circular_correct}});
        }
        reports[region] = std::move(rep);
    }
    ensure_dir(o.out_dir);
    std::sort(lines.begin(), lines.end(), [](const Json& a, const Json& b) {
        return a.at("item").get<int>() < b.at("item").get<int>();
    });
    write_jsonl(o.out_dir + "/vqa_records.jsonl", lines);
    Json aggregate = Json::object();
    double plain = 0.0, circular = 0.0;
    int total = 0;
    for (const auto& [region, rep] : reports) {
        aggregate[region] = vqa_report_to_json(rep, region);
        plain += rep.macc_plain * rep.items;
        circular += rep.macc_circular * rep.items;
        total += rep.items;
    }
    write_text_file(o.out_dir + "/vqa_aggregate.json", canonical_dump(aggregate) + "\n");
    std::cout << "vqa-bench: " << total << " items, plain "
              << (total ? plain / total : 0.0) << ", circular "
              << (total ? circular / total : 0.0) << "\n";
    return 0;
}

int task_clean(const RunOptions& o, const World& w) {
    HashPhotoScorer scorer;
    CleaningConfig cfg;
    cfg.distance_threshold_m = o.clean_distance_m;
    cfg.min_reviews = o.clean_min_reviews;
    cfg.image_score_threshold = o.clean_image_threshold;
    cfg.scorer = &scorer;
    const CleaningResult res = clean_places(w, cfg);

    ensure_dir(o.out_dir);
    std::vector<Json> removal_lines;
    for (const auto& r : res.log) {
        Json line{{"kind", "removal"}, {"place", r.place_id}, {"rule", r.rule}};
        if (!r.detail.empty()) line["detail"] = r.detail;
        removal_lines.push_back(std::move(line));
    }
    write_jsonl(o.out_dir + "/removals.jsonl", removal_lines);
    Json kept = Json::array();
    for (const auto& p : res.kept) kept.push_back(p.id);
    write_text_file(o.out_dir + "/kept.json", canonical_dump(kept) + "\n");
    std::cout << "clean: kept " << res.kept.size() << " of " << w.places().size()
              << " places (" << res.log.size() << " removals)\n";
    return 0;
}

int cmd_run(const RunOptions& o) {
    const World w = resolve_world(o.world);
    if (o.task == "route-optimize") return task_route_optimize(o, w);
    if (o.task == "region-sweep") return task_region_sweep(o, w);
    if (o.task == "vln") return task_vln(o, w);
    if (o.task == "detect-bench") return task_detect_bench(o, w);
    if (o.task == "vqa-bench") return task_vqa_bench(o, w);
    if (o.task == "clean") return task_clean(o, w);
    throw Error("unknown task: " + o.task);
}

// --- report ------------------------------------------------------------------

int cmd_report(const std::string& records_dir, const std::string& out_dir) {
    bool found_any = false;
    ensure_dir(out_dir);

    const std::string vln_path = records_dir + "/vln_records.jsonl";
    if (fs::exists(vln_path)) {
        found_any = true;
        std::map<std::string, std::vector<VlnEpisodeRecord>> by_region;
        std::vector<VlnEpisodeRecord> all;
        for (const auto& j : read_jsonl(vln_path)) {
            std::string region;
            VlnEpisodeRecord rec = vln_record_from_json(j, &region);
            by_region[region].push_back(rec);
            all.push_back(std::move(rec));
        }
        std::map<std::string, VLNReport> reports;
        for (const auto& [region, recs] : by_region) reports[region] = aggregate_vln(recs);
        if (!all.empty()) reports["all"] = aggregate_vln(all);
        write_text_file(out_dir + "/vln.csv", vln_csv(reports));
    }

    const std::string det_path = records_dir + "/detection_reports.jsonl";
    if (fs::exists(det_path)) {
        found_any = true;
        std::vector<DetectionReport> reports;
        for (const auto& j : read_jsonl(det_path)) {
            reports.push_back(detection_report_from_json(j));
        }
        write_text_file(out_dir + "/detection.csv", detection_csv(reports));
    }

    const std::string vqa_path = records_dir + "/vqa_records.jsonl";
    if (fs::exists(vqa_path)) {
        found_any = true;
        struct Tally {
            int items = 0, plain = 0, circular = 0;
        };
        std::map<std::string, Tally> tallies;
        for (const auto& j : read_jsonl(vqa_path)) {
            try {
                Tally& t = tallies[j.at("region").get<std::string>()];
                ++t.items;
                if (j.at("plain_correct").get<bool>()) ++t.plain;
                if (j.at("circular_correct").get<bool>()) ++t.circular;
            } catch (const Json::exception& e) {
                throw Error(std::string("corrupt record: ") + e.what());
            }
        }
        std::map<std::string, VqaReport> reports;
        for (const auto& [region, t] : tallies) {
            VqaReport rep;
            rep.items = t.items;
            rep.macc_plain = t.items ? static_cast<double>(t.plain) / t.items : 0.0;
            rep.macc_circular = t.items ? static_cast<double>(t.circular) / t.items : 0.0;
            reports[region] = rep;
        }
        write_text_file(out_dir + "/vqa.csv", vqa_csv(reports));
    }

    if (!found_any) throw Error("no record files under " + records_dir);
    std::cout << "report tables written to " << out_dir << "\n";
    return 0;
}

void apply_config_file(const std::string& path, RunOptions& o, const CLI::App* run) {
    Json cfg;
    try {
        cfg = Json::parse(read_text_file(path));
    } catch (const Json::parse_error& e) {
        throw SchemaError("$", std::string("config is not JSON: ") + e.what());
    }
    if (!cfg.is_object()) throw SchemaError("$", "config file must hold a JSON object");
    auto flag_given = [&](const std::string& name) {
        const CLI::Option* opt = run->get_option_no_throw(name);
        return opt && opt->count() > 0;
    };
    // Flags win over config values.
    if (cfg.contains("world") && !flag_given("--world")) {
        o.world.world_file = cfg["world"].get<std::string>();
    }
    if (cfg.contains("seed") && !flag_given("--seed")) {
        o.seed = cfg["seed"].get<std::uint64_t>();
    }
    if (cfg.contains("task") && !flag_given("--task")) {
        o.task = cfg["task"].get<std::string>();
    }
    if (cfg.contains("provider") && !flag_given("--provider")) {
        o.provider = cfg["provider"].get<std::string>();
    }
    if (cfg.contains("endpoint") && !flag_given("--endpoint")) {
        o.endpoint = cfg["endpoint"].get<std::string>();
    }
    if (cfg.contains("out") && !flag_given("--out")) {
        o.out_dir = cfg["out"].get<std::string>();
    }
    if (cfg.contains("workers") && !flag_given("--workers")) {
        o.workers = cfg["workers"].get<int>();
    }
    if (cfg.contains("threshold_m") && !flag_given("--threshold-m")) {
        o.threshold_m = cfg["threshold_m"].get<double>();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"street-graph world simulator and benchmark harness"};
    app.require_subcommand(1);

    auto* world_cmd = app.add_subcommand("world", "Generate, validate or inspect worlds");
    world_cmd->require_subcommand(1);

    WorldSourceOptions gen_src;
    std::string gen_out = "world.json";
    auto* gen_cmd = world_cmd->add_subcommand("generate", "Write a canonical world file");
    add_world_source_flags(gen_cmd, gen_src);
    gen_cmd->add_option("--out", gen_out, "Output world file");

    std::string validate_file;
    auto* validate_cmd = world_cmd->add_subcommand("validate", "Check world invariants");
    validate_cmd->add_option("--world", validate_file, "World file")->required();

    std::string stats_file, stats_suite;
    auto* stats_cmd = world_cmd->add_subcommand("stats", "Per-region entity counts");
    stats_cmd->add_option("--world", stats_file, "World file")->required();
    stats_cmd->add_option("--regions", stats_suite, "Suite file providing region polygons");

    RunOptions run_opts;
    std::string config_file;
    auto* run_cmd = app.add_subcommand("run", "Execute a task against a world");
    add_world_source_flags(run_cmd, run_opts.world);
    run_cmd->add_option("--config", config_file, "JSON config; flags override it");
    run_cmd->add_option("--task", run_opts.task,
                        "route-optimize|region-sweep|vln|detect-bench|vqa-bench|clean");
    run_cmd->add_option("--seed", run_opts.seed, "Global seed");
    run_cmd->add_option("--provider", run_opts.provider, "oracle|noisy|external");
    run_cmd->add_option("--policy", run_opts.policy, "scripted|external (vln)");
    run_cmd->add_option("--endpoint", run_opts.endpoint, "External provider endpoint");
    run_cmd->add_option("--timeout-ms", run_opts.timeout_ms, "Provider timeout");
    run_cmd->add_option("--out", run_opts.out_dir, "Output directory");
    run_cmd->add_option("--workers", run_opts.workers, "Parallel episodes (0 = auto)");
    run_cmd->add_option("--threshold-m", run_opts.threshold_m, "VLN success radius");
    run_cmd->add_option("--routes", run_opts.n_routes, "Suite route count");
    run_cmd->add_option("--regions", run_opts.n_regions, "Suite region count");
    run_cmd->add_option("--vqa-items", run_opts.n_vqa, "Suite VQA item count");
    run_cmd->add_option("--suite", run_opts.suite_file, "Pre-generated suite file");
    run_cmd->add_option("--start", run_opts.start_node, "Start node (route-optimize)");
    run_cmd->add_option("--waypoints", run_opts.waypoints_csv, "Comma-separated node ids");
    run_cmd->add_option("--categories", run_opts.categories_csv, "Comma-separated labels");
    run_cmd->add_option("--clean-distance-m", run_opts.clean_distance_m,
                        "Distance filter threshold");
    run_cmd->add_option("--clean-min-reviews", run_opts.clean_min_reviews,
                        "Review filter threshold");
    run_cmd->add_option("--clean-image-threshold", run_opts.clean_image_threshold,
                        "Photo score threshold");

    std::string report_records, report_out = "report";
    auto* report_cmd = app.add_subcommand("report", "Fold records into CSV tables");
    report_cmd->add_option("--records", report_records, "Directory with record files")
        ->required();
    report_cmd->add_option("--out", report_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) return cmd_world_generate(gen_src, gen_out);
        if (validate_cmd->parsed()) return cmd_world_validate(validate_file);
        if (stats_cmd->parsed()) return cmd_world_stats(stats_file, stats_suite);
        if (run_cmd->parsed()) {
            if (!config_file.empty()) apply_config_file(config_file, run_opts, run_cmd);
            if (run_opts.task.empty()) throw Error("missing --task");
            return cmd_run(run_opts);
        }
        if (report_cmd->parsed()) return cmd_report(report_records, report_out);
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DanglingReference& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const AsymmetricEdge& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const UnknownMode& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ProviderError& e) {
        std::cerr << "provider error: " << e.what() << "\n";
        return kExitProvider;
    } catch (const Error& e) {
        const std::string msg = e.what();
        if (msg.find("cannot open") != std::string::npos ||
            msg.find("cannot write") != std::string::npos ||
            msg.find("write failed") != std::string::npos ||
            msg.find("no record files") != std::string::npos ||
            msg.find("corrupt record") != std::string::npos) {
            std::cerr << "io error: " << msg << "\n";
            return kExitIo;
        }
        if (msg.find("no world source") != std::string::npos ||
            msg.find("unknown task") != std::string::npos ||
            msg.find("missing --task") != std::string::npos ||
            msg.find("needs --start") != std::string::npos ||
            msg.find("unknown policy") != std::string::npos) {
            std::cerr << "config error: " << msg << "\n";
            return kExitConfig;
        }
        std::cerr << "engine error: " << msg << "\n";
        return kExitEngine;
    } catch (const std::exception& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return kExitEngine;
    }
    return 0;
}
