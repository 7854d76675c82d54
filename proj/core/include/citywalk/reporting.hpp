#pragma once

#include <map>
#include <string>
#include <vector>

#include "citywalk/canonical_json.hpp"
#include "citywalk/eval.hpp"
#include "citywalk/vln_eval.hpp"

namespace citywalk {

// Result files are line-delimited JSON records plus one aggregate document;
// the report command folds records back into per-region CSV tables.

void write_jsonl(const std::string& path, const std::vector<Json>& records);
std::vector<Json> read_jsonl(const std::string& path);  // throws Error on corrupt lines

Json vln_record_to_json(const VlnEpisodeRecord& r, const std::string& region);
VlnEpisodeRecord vln_record_from_json(const Json& j, std::string* region = nullptr);

Json vln_report_to_json(const VLNReport& r);

Json detection_report_to_json(const DetectionReport& r);
DetectionReport detection_report_from_json(const Json& j);

Json vqa_report_to_json(const VqaReport& r, const std::string& region);

/// region/category recall rows plus one AR row per region; categories with
/// no ground truth carry a note and are excluded from AR.
std::string detection_csv(const std::vector<DetectionReport>& reports);

std::string vln_csv(const std::map<std::string, VLNReport>& per_region);

std::string vqa_csv(const std::map<std::string, VqaReport>& per_region);

std::string recognition_csv(const std::map<std::string, RecognitionReport>& per_region);

}  // namespace citywalk
