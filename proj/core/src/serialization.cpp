#include "citywalk/serialization.hpp"

#include "citywalk/errors.hpp"

namespace citywalk {

namespace {

const Json& need(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path, "expected object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key, "missing field");
    return *it;
}

double num(const Json& j, const std::string& path) {
    if (!j.is_number()) throw SchemaError(path, "expected number");
    return j.get<double>();
}

std::string str(const Json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path, "expected string");
    return j.get<std::string>();
}

int integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) {
        throw SchemaError(path, "expected integer");
    }
    return j.get<int>();
}

}  // namespace

Json pose_to_json(const Pose& p) {
    return Json{{"heading", p.heading}, {"pitch", p.pitch}, {"fov", p.fov}};
}

Pose pose_from_json(const Json& j, const std::string& path) {
    return Pose(num(need(j, "heading", path), path + ".heading"),
                num(need(j, "pitch", path), path + ".pitch"),
                num(need(j, "fov", path), path + ".fov"));
}

Json bbox_to_json(const BBox& b) {
    return Json{{"cx", b.cx}, {"cy", b.cy}, {"w", b.w}, {"h", b.h}};
}

BBox bbox_from_json(const Json& j, const std::string& path) {
    BBox b;
    b.cx = num(need(j, "cx", path), path + ".cx");
    b.cy = num(need(j, "cy", path), path + ".cy");
    b.w = num(need(j, "w", path), path + ".w");
    b.h = num(need(j, "h", path), path + ".h");
    if (b.cx < 0.0 || b.cx > 1.0 || b.cy < 0.0 || b.cy > 1.0 || b.w < 0.0 || b.w > 1.0 ||
        b.h < 0.0 || b.h > 1.0) {
        throw SchemaError(path, "bbox outside image bounds");
    }
    return b;
}

Json proposal_to_json(const ObjectProposal& p) {
    return Json{{"bbox", bbox_to_json(p.bbox)},
                {"label", p.label},
                {"score", p.score},
                {"source_node", p.source_node_id},
                {"source_pose", pose_to_json(p.source_pose)}};
}

ObjectProposal proposal_from_json(const Json& j, const std::string& path) {
    ObjectProposal p;
    p.bbox = bbox_from_json(need(j, "bbox", path), path + ".bbox");
    p.label = str(need(j, "label", path), path + ".label");
    p.score = num(need(j, "score", path), path + ".score");
    if (p.score < 0.0 || p.score > 1.0) throw SchemaError(path + ".score", "score outside [0, 1]");
    p.source_node_id = str(need(j, "source_node", path), path + ".source_node");
    p.source_pose = pose_from_json(need(j, "source_pose", path), path + ".source_pose");
    return p;
}

Json visible_entity_to_json(const VisibleEntity& e) {
    return Json{{"entity", e.entity_id},
                {"category", e.category},
                {"bbox", bbox_to_json(e.bbox)},
                {"distance", e.distance},
                {"bearing", e.bearing}};
}

Json view_to_json(const SymbolicView& v) {
    Json entities = Json::array();
    for (const auto& e : v.visible_entities) entities.push_back(visible_entity_to_json(e));
    return Json{{"node", v.node_id},
                {"pose", pose_to_json(v.pose)},
                {"entities", std::move(entities)}};
}

Json detection_record_to_json(const DetectionRecord& r) {
    return Json{{"proposal", proposal_to_json(r.proposal)}, {"node", r.node_id}};
}

DetectionRecord detection_record_from_json(const Json& j, const std::string& path) {
    DetectionRecord r;
    r.proposal = proposal_from_json(need(j, "proposal", path), path + ".proposal");
    r.node_id = str(need(j, "node", path), path + ".node");
    return r;
}

Json match_result_to_json(const MatchResult& r) {
    Json out{{"proposal", proposal_to_json(r.proposal)}, {"matched", r.matched}};
    if (r.matched) {
        out["place"] = r.place_id;
        out["distance"] = r.distance;
    }
    return out;
}

Json route_to_json(const Route& r) {
    Json keys = Json::array();
    for (const auto& k : r.key_positions) {
        keys.push_back(Json{{"node", k.node_id}, {"kind", to_string(k.kind)}});
    }
    Json legs = Json::array();
    for (const auto& leg : r.legs) {
        legs.push_back(Json{{"nodes", leg.nodes}, {"length", leg.length}});
    }
    return Json{{"id", r.id},
                {"keys", std::move(keys)},
                {"legs", std::move(legs)},
                {"total_length", r.total_length},
                {"mode", to_string(r.mode)}};
}

Route route_from_json(const Json& j, const std::string& path) {
    Route r;
    r.id = str(need(j, "id", path), path + ".id");
    const Json& keys = need(j, "keys", path);
    if (!keys.is_array()) throw SchemaError(path + ".keys", "expected array");
    for (size_t i = 0; i < keys.size(); ++i) {
        const std::string kp = path + ".keys[" + std::to_string(i) + "]";
        KeyPosition k;
        k.node_id = str(need(keys[i], "node", kp), kp + ".node");
        const std::string kind = str(need(keys[i], "kind", kp), kp + ".kind");
        if (kind == "start") k.kind = KeyKind::start;
        else if (kind == "intersection") k.kind = KeyKind::intersection;
        else if (kind == "stop") k.kind = KeyKind::stop;
        else throw SchemaError(kp + ".kind", "unknown key kind: " + kind);
        r.key_positions.push_back(std::move(k));
    }
    const Json& legs = need(j, "legs", path);
    if (!legs.is_array()) throw SchemaError(path + ".legs", "expected array");
    for (size_t i = 0; i < legs.size(); ++i) {
        const std::string lp = path + ".legs[" + std::to_string(i) + "]";
        RouteLeg leg;
        const Json& nodes = need(legs[i], "nodes", lp);
        if (!nodes.is_array()) throw SchemaError(lp + ".nodes", "expected array");
        for (size_t k = 0; k < nodes.size(); ++k) {
            leg.nodes.push_back(str(nodes[k], lp + ".nodes[" + std::to_string(k) + "]"));
        }
        leg.length = num(need(legs[i], "length", lp), lp + ".length");
        r.legs.push_back(std::move(leg));
    }
    r.total_length = num(need(j, "total_length", path), path + ".total_length");
    r.mode = parse_transport_mode(str(need(j, "mode", path), path + ".mode"));
    return r;
}

namespace {

Json trigger_to_json(const Trigger& t) {
    Json out;
    switch (t.kind) {
        case TriggerKind::at_intersection:
            out["kind"] = "at_intersection";
            out["ordinal"] = t.ordinal;
            break;
        case TriggerKind::at_landmark:
            out["kind"] = "at_landmark";
            out["place"] = t.place_id;
            out["name"] = t.place_name;
            out["side"] = t.side == Side::right ? "right" : "left";
            out["ordinal"] = t.ordinal;
            break;
        case TriggerKind::at_destination:
            out["kind"] = "at_destination";
            out["steps"] = t.steps;
            if (!t.place_id.empty()) {
                out["place"] = t.place_id;
                out["name"] = t.place_name;
            }
            break;
    }
    return out;
}

Trigger trigger_from_json(const Json& j, const std::string& path) {
    Trigger t;
    const std::string kind = str(need(j, "kind", path), path + ".kind");
    if (kind == "at_intersection") {
        t.kind = TriggerKind::at_intersection;
        t.ordinal = integer(need(j, "ordinal", path), path + ".ordinal");
    } else if (kind == "at_landmark") {
        t.kind = TriggerKind::at_landmark;
        t.place_id = str(need(j, "place", path), path + ".place");
        t.place_name = str(need(j, "name", path), path + ".name");
        const std::string side = str(need(j, "side", path), path + ".side");
        if (side != "left" && side != "right") throw SchemaError(path + ".side", "bad side");
        t.side = side == "right" ? Side::right : Side::left;
        t.ordinal = integer(need(j, "ordinal", path), path + ".ordinal");
    } else if (kind == "at_destination") {
        t.kind = TriggerKind::at_destination;
        t.steps = integer(need(j, "steps", path), path + ".steps");
        if (j.contains("place")) {
            t.place_id = str(j["place"], path + ".place");
            t.place_name = str(need(j, "name", path), path + ".name");
        }
    } else {
        throw SchemaError(path + ".kind", "unknown trigger kind: " + kind);
    }
    return t;
}

}  // namespace

Json instruction_to_json(const Instruction& i) {
    Json segs = Json::array();
    for (const auto& s : i.segments) {
        segs.push_back(Json{{"action", to_string(s.action)},
                            {"trigger", trigger_to_json(s.trigger)}});
    }
    return Json{{"segments", std::move(segs)}, {"text", i.verbalization}};
}

Instruction instruction_from_json(const Json& j, const std::string& path) {
    Instruction out;
    const Json& segs = need(j, "segments", path);
    if (!segs.is_array()) throw SchemaError(path + ".segments", "expected array");
    for (size_t i = 0; i < segs.size(); ++i) {
        const std::string sp = path + ".segments[" + std::to_string(i) + "]";
        Segment s;
        s.action = action_from_string(str(need(segs[i], "action", sp), sp + ".action"));
        s.trigger = trigger_from_json(need(segs[i], "trigger", sp), sp + ".trigger");
        out.segments.push_back(std::move(s));
    }
    if (out.segments.empty() || out.segments.back().action != Action::stop) {
        throw SchemaError(path + ".segments", "last segment must be stop");
    }
    out.verbalization = str(need(j, "text", path), path + ".text");
    return out;
}

}  // namespace citywalk
