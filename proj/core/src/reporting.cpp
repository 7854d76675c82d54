#include "citywalk/reporting.hpp"

#include <fstream>
#include <sstream>

#include "citywalk/errors.hpp"

namespace citywalk {

void write_jsonl(const std::string& path, const std::vector<Json>& records) {
    std::string out;
    for (const auto& r : records) {
        out += canonical_dump(r);
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<Json> read_jsonl(const std::string& path) {
    const std::string content = read_text_file(path);
    std::vector<Json> records;
    std::istringstream in(content);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            records.push_back(Json::parse(line));
        } catch (const Json::parse_error& e) {
            throw Error(path + ":" + std::to_string(line_no) + ": corrupt record: " +
                        e.what());
        }
    }
    return records;
}

namespace {

Json key_class_to_json(const KeyClassStats& s) {
    return Json{{"total", s.total}, {"reached", s.reached}, {"correct", s.correct}};
}

KeyClassStats key_class_from_json(const Json& j) {
    KeyClassStats s;
    s.total = j.at("total").get<int>();
    s.reached = j.at("reached").get<int>();
    s.correct = j.at("correct").get<int>();
    return s;
}

std::string fmt(double v) { return canonical_number(v); }

}  // namespace

Json vln_record_to_json(const VlnEpisodeRecord& r, const std::string& region) {
    return Json{{"kind", "vln_episode"},
                {"region", region},
                {"route", r.route_id},
                {"success", r.success},
                {"budget_exhausted", r.budget_exhausted},
                {"steps", r.steps},
                {"final_distance_m", r.final_distance_m},
                {"start", key_class_to_json(r.start)},
                {"intersection", key_class_to_json(r.intersection)},
                {"stop", key_class_to_json(r.stop)}};
}

VlnEpisodeRecord vln_record_from_json(const Json& j, std::string* region) {
    VlnEpisodeRecord r;
    try {
        if (region) *region = j.value("region", std::string("all"));
        r.route_id = j.at("route").get<std::string>();
        r.success = j.at("success").get<bool>();
        r.budget_exhausted = j.at("budget_exhausted").get<bool>();
        r.steps = j.at("steps").get<int>();
        r.final_distance_m = j.at("final_distance_m").get<double>();
        r.start = key_class_from_json(j.at("start"));
        r.intersection = key_class_from_json(j.at("intersection"));
        r.stop = key_class_from_json(j.at("stop"));
    } catch (const Json::exception& e) {
        throw Error(std::string("bad vln record: ") + e.what());
    }
    return r;
}

Json vln_report_to_json(const VLNReport& r) {
    return Json{{"routes", r.routes},
                {"success", r.success},
                {"start_reac", r.start_reac},
                {"intersection_arr", r.intersection_arr},
                {"intersection_reac", r.intersection_reac},
                {"stop_arr", r.stop_arr},
                {"stop_reac", r.stop_reac}};
}

Json detection_report_to_json(const DetectionReport& r) {
    Json per_cat = Json::object();
    for (const auto& [cat, rec] : r.per_category) {
        per_cat[cat] = Json{{"n_tp", rec.n_tp}, {"n_fn", rec.n_fn}};
    }
    Json out{{"kind", "detection_report"},
             {"region", r.region},
             {"per_category", std::move(per_cat)}};
    if (auto ar = r.average_recall()) out["average_recall"] = *ar;
    return out;
}

DetectionReport detection_report_from_json(const Json& j) {
    DetectionReport r;
    try {
        r.region = j.at("region").get<std::string>();
        for (auto it = j.at("per_category").begin(); it != j.at("per_category").end(); ++it) {
            CategoryRecall rec;
            rec.n_tp = it.value().at("n_tp").get<int>();
            rec.n_fn = it.value().at("n_fn").get<int>();
            r.per_category[it.key()] = rec;
        }
    } catch (const Json::exception& e) {
        throw Error(std::string("bad detection report: ") + e.what());
    }
    return r;
}

Json vqa_report_to_json(const VqaReport& r, const std::string& region) {
    return Json{{"kind", "vqa_report"},
                {"region", region},
                {"items", r.items},
                {"macc_plain", r.macc_plain},
                {"macc_circular", r.macc_circular}};
}

std::string detection_csv(const std::vector<DetectionReport>& reports) {
    std::string out = "region,category,n_tp,n_fn,recall,note\n";
    for (const auto& rep : reports) {
        for (const auto& [cat, rec] : rep.per_category) {
            out += rep.region + "," + cat + "," + std::to_string(rec.n_tp) + "," +
                   std::to_string(rec.n_fn) + ",";
            if (auto r = rec.recall()) {
                out += fmt(*r) + ",";
            } else {
                out += ",no_ground_truth_excluded_from_AR";
            }
            out += "\n";
        }
        out += rep.region + ",AR,,,";
        if (auto ar = rep.average_recall()) out += fmt(*ar);
        out += ",\n";
    }
    return out;
}

std::string vln_csv(const std::map<std::string, VLNReport>& per_region) {
    std::string out =
        "region,routes,success,start_reac,intersection_arr,intersection_reac,"
        "stop_arr,stop_reac\n";
    for (const auto& [region, r] : per_region) {
        out += region + "," + std::to_string(r.routes) + "," + fmt(r.success) + "," +
               fmt(r.start_reac) + "," + fmt(r.intersection_arr) + "," +
               fmt(r.intersection_reac) + "," + fmt(r.stop_arr) + "," + fmt(r.stop_reac) +
               "\n";
    }
    return out;
}

std::string vqa_csv(const std::map<std::string, VqaReport>& per_region) {
    std::string out = "region,items,macc_plain,macc_circular\n";
    for (const auto& [region, r] : per_region) {
        out += region + "," + std::to_string(r.items) + "," + fmt(r.macc_plain) + "," +
               fmt(r.macc_circular) + "\n";
    }
    return out;
}

std::string recognition_csv(const std::map<std::string, RecognitionReport>& per_region) {
    std::string out = "region,types,macc\n";
    for (const auto& [region, r] : per_region) {
        out += region + "," + std::to_string(r.per_type.size()) + "," + fmt(r.macc) + "\n";
    }
    return out;
}

}  // namespace citywalk
