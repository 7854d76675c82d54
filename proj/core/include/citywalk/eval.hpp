#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "citywalk/perception.hpp"
#include "citywalk/providers.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

struct CategoryRecall {
    int n_tp = 0;  // ground-truth places matched at least once
    int n_fn = 0;  // ground-truth places never matched
    std::optional<double> recall() const {
        const int denom = n_tp + n_fn;
        if (denom == 0) return std::nullopt;
        return static_cast<double>(n_tp) / denom;
    }
};

struct DetectionReport {
    std::string region;
    std::map<std::string, CategoryRecall> per_category;
    /// Mean recall over categories with ground truth (AR over the tested set).
    std::optional<double> average_recall() const;
};

/**
 * Localization recall per category: a ground-truth place of category c counts
 * as found when any proposal labeled c matched it; recall = N_tp/(N_tp+N_fn).
 * Categories without ground truth are reported but excluded from AR.
 */
DetectionReport eval_detection(const std::vector<MatchResult>& run,
                               const std::vector<Place>& ground_truth,
                               const std::vector<std::string>& categories,
                               const std::string& region = "all");

struct RecognitionReport {
    std::map<std::string, std::pair<int, int>> per_type;  // type -> (correct, total)
    double macc = 0.0;  // macro mean over types present in ground truth
};

/// Place-type recognition, macro-averaged over the primary type of each
/// evaluated place. Predictions must reference known places (UnknownPlace).
RecognitionReport eval_recognition(const std::map<std::string, std::string>& predictions,
                                   const World& w);

struct VQAItem {
    std::string image_ref;  // symbolic
    std::string question;
    std::array<std::string, 4> options;
    int answer_index = 0;  // into options
};

struct VqaItemResult {
    bool plain_correct = false;
    bool circular_correct = false;
};

struct VqaReport {
    double macc_plain = 0.0;     // single query per item, original option order
    double macc_circular = 0.0;  // all 4 rotations must agree with the truth
    int items = 0;
    std::vector<VqaItemResult> per_item;
};

/**
 * Circular multiple-choice evaluation: each item is asked once per rotation
 * of its options; it scores under the circular metric only when every
 * rotation maps back to the true option. Plain accuracy uses rotation 0, so
 * macc_circular <= macc_plain for any provider.
 */
VqaReport eval_vqa_circular(ChooseProvider& model, const std::vector<VQAItem>& items);

}  // namespace citywalk
