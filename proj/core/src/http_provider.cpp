#include "citywalk/http_provider.hpp"

#include <httplib.h>

#include "citywalk/errors.hpp"
#include "citywalk/serialization.hpp"

namespace citywalk {

namespace {

// Split "http://host:port" into (host, port).
void parse_endpoint(const std::string& endpoint, std::string& host, int& port) {
    std::string rest = endpoint;
    const std::string scheme = "http://";
    if (rest.rfind(scheme, 0) == 0) rest = rest.substr(scheme.size());
    while (!rest.empty() && rest.back() == '/') rest.pop_back();
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) {
        host = rest;
        port = 80;
        return;
    }
    host = rest.substr(0, colon);
    try {
        port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
        throw ProviderError("bad endpoint: " + endpoint);
    }
}

}  // namespace

HttpProviderClient::HttpProviderClient(ExternalEndpointConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.endpoint.empty()) throw ProviderError("external provider needs an endpoint");
    parse_endpoint(cfg_.endpoint, host_, port_);
}

Json HttpProviderClient::post_json(const std::string& path, const Json& body) const {
    const std::string payload = canonical_dump(body);
    std::string last_error;
    for (int attempt = 0; attempt <= cfg_.retries; ++attempt) {
        httplib::Client cli(host_, port_);
        cli.set_connection_timeout(0, cfg_.timeout_ms * 1000);
        cli.set_read_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);
        cli.set_write_timeout(cfg_.timeout_ms / 1000, (cfg_.timeout_ms % 1000) * 1000);
        httplib::Headers headers;
        if (!cfg_.auth_token.empty()) {
            headers.emplace("Authorization", "Bearer " + cfg_.auth_token);
        }
        auto res = cli.Post(path, headers, payload, "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            throw ProviderError("provider returned status " + std::to_string(res->status) +
                                " for " + path);
        }
        try {
            return Json::parse(res->body);
        } catch (const Json::parse_error& e) {
            throw ProviderError(std::string("provider reply is not JSON: ") + e.what());
        }
    }
    throw ProviderError("provider unreachable after " + std::to_string(cfg_.retries + 1) +
                        " attempts (" + last_error + ")");
}

std::vector<ObjectProposal> HttpDetector::detect(const SymbolicView& view,
                                                 const std::vector<std::string>& categories) {
    Json body{{"view", view_to_json(view)}, {"categories", categories}};
    const Json reply = client_.post_json("/detect", body);
    if (!reply.is_object() || !reply.contains("proposals") || !reply["proposals"].is_array()) {
        throw ProviderError("detect reply missing proposals array");
    }
    std::vector<ObjectProposal> out;
    for (size_t i = 0; i < reply["proposals"].size(); ++i) {
        try {
            out.push_back(proposal_from_json(reply["proposals"][i],
                                             "proposals[" + std::to_string(i) + "]"));
        } catch (const SchemaError& e) {
            throw ProviderError(std::string("malformed proposal: ") + e.what());
        }
    }
    return out;
}

MatchDecision HttpMatcher::match(const DetectionRecord& a, const DetectionRecord& b) {
    Json body{{"a", detection_record_to_json(a)}, {"b", detection_record_to_json(b)}};
    const Json reply = client_.post_json("/match", body);
    if (!reply.is_object() || !reply.contains("same") || !reply["same"].is_boolean()) {
        throw ProviderError("match reply missing boolean 'same'");
    }
    MatchDecision d;
    d.same = reply["same"].get<bool>();
    d.score = reply.contains("score") && reply["score"].is_number()
                  ? reply["score"].get<double>()
                  : (d.same ? 1.0 : 0.0);
    return d;
}

Choice HttpChooser::choose(const std::vector<std::string>& options,
                           const std::string& context) {
    Json body{{"options", options}, {"context", context}};
    const Json reply = client_.post_json("/choose", body);
    if (!reply.is_object() || !reply.contains("index") ||
        !(reply["index"].is_number_integer() || reply["index"].is_number_unsigned())) {
        throw UnparseableAnswer("choose reply has no integer index");
    }
    Choice c;
    c.index = reply["index"].get<int>();
    if (reply.contains("rationale") && reply["rationale"].is_string()) {
        c.rationale = reply["rationale"].get<std::string>();
    }
    return c;
}

}  // namespace citywalk
