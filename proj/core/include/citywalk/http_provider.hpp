#pragma once

#include <string>
#include <vector>

#include "citywalk/canonical_json.hpp"
#include "citywalk/providers.hpp"

namespace citywalk {

/**
 * HTTP clients for the external provider protocol. Three POST endpoints,
 * JSON bodies both ways:
 *
 *   /detect  {"view": <view>, "categories": [..]} -> {"proposals": [..]}
 *   /match   {"a": <detection>, "b": <detection>} -> {"same": bool, "score": x}
 *   /choose  {"options": [..], "context": ".."}   -> {"index": k, "rationale": ".."}
 *
 * Transport failures, non-200 statuses and malformed replies raise
 * ProviderError; /choose replies without a usable index raise
 * UnparseableAnswer. A bearer token, when configured, is sent as
 * `Authorization: Bearer <token>`.
 */
class HttpProviderClient {
public:
    explicit HttpProviderClient(ExternalEndpointConfig cfg);

    /// POST `path` with a JSON body; returns the parsed JSON reply.
    Json post_json(const std::string& path, const Json& body) const;

    const ExternalEndpointConfig& config() const { return cfg_; }

private:
    ExternalEndpointConfig cfg_;
    std::string host_;
    int port_ = 80;
};

class HttpDetector : public DetectProvider {
public:
    explicit HttpDetector(ExternalEndpointConfig cfg) : client_(std::move(cfg)) {}
    std::vector<ObjectProposal> detect(const SymbolicView& view,
                                       const std::vector<std::string>& categories) override;

private:
    HttpProviderClient client_;
};

class HttpMatcher : public MatchProvider {
public:
    explicit HttpMatcher(ExternalEndpointConfig cfg) : client_(std::move(cfg)) {}
    MatchDecision match(const DetectionRecord& a, const DetectionRecord& b) override;

private:
    HttpProviderClient client_;
};

class HttpChooser : public ChooseProvider {
public:
    explicit HttpChooser(ExternalEndpointConfig cfg) : client_(std::move(cfg)) {}
    Choice choose(const std::vector<std::string>& options,
                  const std::string& context) override;

private:
    HttpProviderClient client_;
};

}  // namespace citywalk
