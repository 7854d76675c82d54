#include "citywalk/canonical_json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "citywalk/errors.hpp"

namespace citywalk {

std::string canonical_number(double value) {
    if (!std::isfinite(value)) {
        throw Error("non-finite number cannot be serialized canonically");
    }
    if (value == 0.0) return "0";  // collapses -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

namespace {

void dump_rec(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            // nlohmann object_t is std::map: iteration is already key-sorted
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += Json(it.key()).dump();
                out += ':';
                dump_rec(it.value(), out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                dump_rec(j[i], out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float:
            out += canonical_number(j.get<double>());
            break;
        default:
            // strings (escaped), integers, booleans, null
            out += j.dump();
            break;
    }
}

}  // namespace

std::string canonical_dump(const Json& doc) {
    std::string out;
    dump_rec(doc, out);
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

}  // namespace citywalk
