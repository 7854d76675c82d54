#include "citywalk/providers.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "citywalk/canonical_json.hpp"
#include "citywalk/errors.hpp"
#include "citywalk/http_provider.hpp"
#include "citywalk/rng.hpp"

namespace citywalk {

std::vector<ObjectProposal> OracleDetector::detect(
    const SymbolicView& view, const std::vector<std::string>& categories) {
    std::vector<ObjectProposal> out;
    for (const auto& e : view.visible_entities) {
        std::string label;
        if (categories.empty()) {
            label = e.category;
        } else if (std::find(categories.begin(), categories.end(), e.category) !=
                   categories.end()) {
            label = e.category;
        } else {
            // Places can also be requested by display name (VLN landmarks).
            auto it = world_->places().find(e.entity_id);
            if (it != world_->places().end() &&
                std::find(categories.begin(), categories.end(), it->second.name) !=
                    categories.end()) {
                label = it->second.name;
            }
        }
        if (label.empty()) continue;
        ObjectProposal p;
        p.bbox = e.bbox;
        p.label = label;
        p.score = 1.0;
        p.source_node_id = view.node_id;
        p.source_pose = view.pose;
        out.push_back(std::move(p));
    }
    return out;
}

double recall_for_area(const std::vector<RecallBand>& bands, double area) {
    for (const auto& b : bands) {
        if (area <= b.max_area) return b.recall;
    }
    return bands.empty() ? 1.0 : bands.back().recall;
}

namespace {

std::string pose_key(const Pose& p) {
    return canonical_number(p.heading) + "|" + canonical_number(p.pitch) + "|" +
           canonical_number(p.fov);
}

std::string view_key(const SymbolicView& v, const std::vector<std::string>& categories) {
    std::string key = v.node_id + "|" + pose_key(v.pose);
    for (const auto& c : categories) key += "|" + c;
    return key;
}

std::string proposal_key(const DetectionRecord& r) {
    return r.node_id + "|" + r.proposal.source_node_id + "|" +
           pose_key(r.proposal.source_pose) + "|" + canonical_number(r.proposal.bbox.cx) +
           "|" + canonical_number(r.proposal.bbox.cy) + "|" + r.proposal.label;
}

}  // namespace

std::vector<ObjectProposal> NoisyDetector::detect(
    const SymbolicView& view, const std::vector<std::string>& categories) {
    // Per-view seeding keeps output independent of call order, so parallel
    // episodes stay reproducible.
    SeededRng rng(hash_combine(cfg_.seed, stable_hash(view_key(view, categories))));
    std::vector<ObjectProposal> out;
    for (auto& p : oracle_.detect(view, categories)) {
        const double keep = recall_for_area(cfg_.recall_by_size, p.bbox.area());
        if (!rng.chance(keep)) continue;
        if (cfg_.confusion_rate > 0.0 && rng.chance(cfg_.confusion_rate)) {
            auto it = cfg_.label_confusion.find(p.label);
            if (it != cfg_.label_confusion.end()) p.label = it->second;
        }
        p.score = 0.5 + 0.5 * rng.uniform();
        out.push_back(std::move(p));
    }
    if (cfg_.false_positive_rate > 0.0 && rng.chance(cfg_.false_positive_rate) &&
        !categories.empty()) {
        ObjectProposal fp;
        fp.label = categories[rng.uniform_int(categories.size())];
        fp.bbox.cx = rng.uniform(0.2, 0.8);
        fp.bbox.cy = rng.uniform(0.3, 0.7);
        fp.bbox.w = rng.uniform(0.02, 0.2);
        fp.bbox.h = rng.uniform(0.02, 0.2);
        fp.score = rng.uniform(0.1, 0.6);
        fp.source_node_id = view.node_id;
        fp.source_pose = view.pose;
        out.push_back(std::move(fp));
    }
    return out;
}

MatchDecision OracleMatcher::match(const DetectionRecord& a, const DetectionRecord& b) {
    const auto ia = match_proposal_to_instance(*world_, a.proposal, radius_);
    const auto ib = match_proposal_to_instance(*world_, b.proposal, radius_);
    const bool same = ia && ib && *ia == *ib;
    return {same, same ? 1.0 : 0.0};
}

MatchDecision SimulatedMatcher::match(const DetectionRecord& a, const DetectionRecord& b) {
    MatchDecision truth = oracle_.match(a, b);
    // Symmetric per-pair seed: flips do not depend on argument order.
    std::string ka = proposal_key(a), kb = proposal_key(b);
    if (kb < ka) std::swap(ka, kb);
    SeededRng rng(hash_combine(cfg_.seed, stable_hash(ka + "#" + kb)));
    if (truth.same) {
        if (rng.chance(cfg_.missed_match_rate)) return {false, 0.4};
        return {true, 0.9};
    }
    if (rng.chance(cfg_.false_match_rate)) return {true, 0.6};
    return {false, 0.1};
}

namespace {

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            cur += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

Choice KeywordChooser::choose(const std::vector<std::string>& options,
                              const std::string& context) {
    const auto ctx_tokens = tokenize(context);
    const std::set<std::string> ctx(ctx_tokens.begin(), ctx_tokens.end());
    Choice best;
    int best_score = -1;
    for (size_t i = 0; i < options.size(); ++i) {
        const auto toks = tokenize(options[i]);
        const std::set<std::string> uniq(toks.begin(), toks.end());
        int score = 0;
        std::string matched;
        for (const auto& t : uniq) {
            if (ctx.count(t)) {
                ++score;
                if (!matched.empty()) matched += ", ";
                matched += t;
            }
        }
        if (score > best_score) {
            best_score = score;
            best.index = static_cast<int>(i);
            best.rationale = matched.empty() ? "no overlapping keywords"
                                             : "matched: " + matched;
        }
    }
    return best;
}

double HashPhotoScorer::score(const std::string& photo_ref, const std::string& target_label) {
    return static_cast<double>(stable_hash(photo_ref + "|" + target_label) % 10007ULL) /
           10006.0;
}

ProviderKind provider_kind_from_string(const std::string& s) {
    if (s == "oracle") return ProviderKind::oracle;
    if (s == "noisy") return ProviderKind::noisy;
    if (s == "external") return ProviderKind::external;
    throw UnknownMode("unknown provider kind: " + s);
}

std::unique_ptr<DetectProvider> make_detector(const ProviderConfig& cfg, const World& w) {
    switch (cfg.kind) {
        case ProviderKind::oracle: return std::make_unique<OracleDetector>(w);
        case ProviderKind::noisy: return std::make_unique<NoisyDetector>(w, cfg.noisy_detector);
        case ProviderKind::external: return std::make_unique<HttpDetector>(cfg.external);
    }
    throw UnknownMode("invalid provider kind");
}

std::unique_ptr<MatchProvider> make_matcher(const ProviderConfig& cfg, const World& w) {
    switch (cfg.kind) {
        case ProviderKind::oracle: return std::make_unique<OracleMatcher>(w);
        case ProviderKind::noisy:
            return std::make_unique<SimulatedMatcher>(w, cfg.simulated_matcher);
        case ProviderKind::external: return std::make_unique<HttpMatcher>(cfg.external);
    }
    throw UnknownMode("invalid provider kind");
}

std::unique_ptr<ChooseProvider> make_chooser(const ProviderConfig& cfg) {
    switch (cfg.kind) {
        case ProviderKind::oracle:
        case ProviderKind::noisy: return std::make_unique<KeywordChooser>();
        case ProviderKind::external: return std::make_unique<HttpChooser>(cfg.external);
    }
    throw UnknownMode("invalid provider kind");
}

}  // namespace citywalk
