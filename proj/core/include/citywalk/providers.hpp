#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "citywalk/perception.hpp"
#include "citywalk/world.hpp"

namespace citywalk {

/// Perception: symbolic view + requested categories -> proposals.
/// A requested category matches an entity by its category, or, for places,
/// by its display name (VLN landmark lookup works by name).
class DetectProvider {
public:
    virtual ~DetectProvider() = default;
    virtual std::vector<ObjectProposal> detect(const SymbolicView& view,
                                               const std::vector<std::string>& categories) = 0;
};

struct MatchDecision {
    bool same = false;
    double score = 0.0;
};

/// Feature matching stand-in: are two detections the same physical object?
class MatchProvider {
public:
    virtual ~MatchProvider() = default;
    virtual MatchDecision match(const DetectionRecord& a, const DetectionRecord& b) = 0;
};

struct Choice {
    int index = -1;
    std::string rationale;
};

/// Reasoning: pick one option given free-text context.
class ChooseProvider {
public:
    virtual ~ChooseProvider() = default;
    virtual Choice choose(const std::vector<std::string>& options,
                          const std::string& context) = 0;
};

/// Image scoring (the CLIP-likelihood stand-in used by data cleaning).
class PhotoScoreProvider {
public:
    virtual ~PhotoScoreProvider() = default;
    virtual double score(const std::string& photo_ref, const std::string& target_label) = 0;
};

// ---------------------------------------------------------------------------
// Oracle implementations: read ground truth from the World, isolating
// environment correctness from model quality.

class OracleDetector : public DetectProvider {
public:
    explicit OracleDetector(const World& w) : world_(&w) {}
    std::vector<ObjectProposal> detect(const SymbolicView& view,
                                       const std::vector<std::string>& categories) override;

private:
    const World* world_;
};

class OracleMatcher : public MatchProvider {
public:
    explicit OracleMatcher(const World& w, double radius_m = kDefaultFrustumRadiusM)
        : world_(&w), radius_(radius_m) {}
    MatchDecision match(const DetectionRecord& a, const DetectionRecord& b) override;

private:
    const World* world_;
    double radius_;
};

/// Keyword-overlap reasoner: scores each option by shared tokens with the
/// context, highest wins, ties to the smallest index. Fully deterministic.
class KeywordChooser : public ChooseProvider {
public:
    Choice choose(const std::vector<std::string>& options,
                  const std::string& context) override;
};

/// Deterministic pseudo-score derived from the photo reference hash.
class HashPhotoScorer : public PhotoScoreProvider {
public:
    double score(const std::string& photo_ref, const std::string& target_label) override;
};

// ---------------------------------------------------------------------------
// Noise models. All draws are derived from (seed, call identity) hashes, so
// results are reproducible and independent of call order.

struct RecallBand {
    double max_area = 1.0;  // applies to bbox areas <= max_area
    double recall = 1.0;
};

struct NoisyDetectorConfig {
    std::uint64_t seed = 0;
    std::vector<RecallBand> recall_by_size = {{0.001, 0.25}, {0.01, 0.6}, {1.0, 0.95}};
    double false_positive_rate = 0.0;  // probability of one spurious proposal per view
    std::map<std::string, std::string> label_confusion;  // category -> wrong category
    double confusion_rate = 0.0;
};

double recall_for_area(const std::vector<RecallBand>& bands, double area);

class NoisyDetector : public DetectProvider {
public:
    NoisyDetector(const World& w, NoisyDetectorConfig cfg)
        : oracle_(w), cfg_(std::move(cfg)) {}
    std::vector<ObjectProposal> detect(const SymbolicView& view,
                                       const std::vector<std::string>& categories) override;

private:
    OracleDetector oracle_;
    NoisyDetectorConfig cfg_;
};

struct SimulatedMatcherConfig {
    std::uint64_t seed = 0;
    double false_match_rate = 0.0;   // declares distinct objects the same
    double missed_match_rate = 0.0;  // declares the same object distinct
};

class SimulatedMatcher : public MatchProvider {
public:
    SimulatedMatcher(const World& w, SimulatedMatcherConfig cfg,
                     double radius_m = kDefaultFrustumRadiusM)
        : oracle_(w, radius_m), cfg_(cfg) {}
    MatchDecision match(const DetectionRecord& a, const DetectionRecord& b) override;

private:
    OracleMatcher oracle_;
    SimulatedMatcherConfig cfg_;
};

/// Zero-recall detector (never sees anything); handy for ablations.
class BlindDetector : public DetectProvider {
public:
    std::vector<ObjectProposal> detect(const SymbolicView&,
                                       const std::vector<std::string>&) override {
        return {};
    }
};

// ---------------------------------------------------------------------------
// Configuration surface shared by the CLI and the suite runners.

enum class ProviderKind { oracle, noisy, external };

ProviderKind provider_kind_from_string(const std::string& s);  // throws UnknownMode

struct ExternalEndpointConfig {
    std::string endpoint;  // e.g. http://127.0.0.1:8089
    int timeout_ms = 5000;
    int retries = 1;
    std::string auth_token;
};

struct ProviderConfig {
    ProviderKind kind = ProviderKind::oracle;
    NoisyDetectorConfig noisy_detector;
    SimulatedMatcherConfig simulated_matcher;
    ExternalEndpointConfig external;
};

std::unique_ptr<DetectProvider> make_detector(const ProviderConfig& cfg, const World& w);
std::unique_ptr<MatchProvider> make_matcher(const ProviderConfig& cfg, const World& w);
std::unique_ptr<ChooseProvider> make_chooser(const ProviderConfig& cfg);

}  // namespace citywalk
