#include "citywalk/eval.hpp"

#include <algorithm>
#include <set>

#include "citywalk/errors.hpp"

namespace citywalk {

std::optional<double> DetectionReport::average_recall() const {
    double sum = 0.0;
    int n = 0;
    for (const auto& [cat, rec] : per_category) {
        if (auto r = rec.recall()) {
            sum += *r;
            ++n;
        }
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

DetectionReport eval_detection(const std::vector<MatchResult>& run,
                               const std::vector<Place>& ground_truth,
                               const std::vector<std::string>& categories,
                               const std::string& region) {
    DetectionReport report;
    report.region = region;

    // Which (category, place) pairs were hit by at least one matched proposal.
    std::set<std::pair<std::string, std::string>> hits;
    for (const auto& r : run) {
        if (r.matched) hits.insert({r.proposal.label, r.place_id});
    }

    for (const auto& cat : categories) {
        CategoryRecall rec;
        for (const auto& p : ground_truth) {
            if (std::find(p.types.begin(), p.types.end(), cat) == p.types.end()) continue;
            if (hits.count({cat, p.id})) {
                ++rec.n_tp;
            } else {
                ++rec.n_fn;
            }
        }
        report.per_category[cat] = rec;
    }
    return report;
}

RecognitionReport eval_recognition(const std::map<std::string, std::string>& predictions,
                                   const World& w) {
    RecognitionReport report;
    for (const auto& [place_id, predicted] : predictions) {
        const Place& p = w.place(place_id);  // throws UnknownPlace
        const std::string& truth = p.types.front();
        auto& [correct, total] = report.per_type[truth];
        ++total;
        if (predicted == truth) ++correct;
    }
    double sum = 0.0;
    for (const auto& [type, ct] : report.per_type) {
        sum += static_cast<double>(ct.first) / ct.second;
    }
    report.macc = report.per_type.empty() ? 0.0 : sum / report.per_type.size();
    return report;
}

VqaReport eval_vqa_circular(ChooseProvider& model, const std::vector<VQAItem>& items) {
    VqaReport report;
    report.items = static_cast<int>(items.size());
    if (items.empty()) return report;

    int plain_correct = 0;
    int circular_correct = 0;
    for (const auto& item : items) {
        if (item.answer_index < 0 || item.answer_index >= 4) {
            throw Error("VQA item has invalid answer index");
        }
        VqaItemResult result;
        bool all_rotations = true;
        for (int rot = 0; rot < 4; ++rot) {
            std::vector<std::string> options(4);
            for (int k = 0; k < 4; ++k) options[(k + rot) % 4] = item.options[k];
            const Choice c = model.choose(options, item.question);
            if (c.index < 0 || c.index >= 4) {
                throw UnparseableAnswer("model answered option " + std::to_string(c.index));
            }
            const bool correct = c.index == (item.answer_index + rot) % 4;
            if (rot == 0) result.plain_correct = correct;
            if (!correct) all_rotations = false;
        }
        result.circular_correct = all_rotations;
        if (result.plain_correct) ++plain_correct;
        if (result.circular_correct) ++circular_correct;
        report.per_item.push_back(result);
    }
    report.macc_plain = static_cast<double>(plain_correct) / report.items;
    report.macc_circular = static_cast<double>(circular_correct) / report.items;
    return report;
}

}  // namespace citywalk
