#include "otinfo/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace otinfo {

namespace {

std::vector<double> parse_array(const nlohmann::json& j, const char* key) {
    if (!j.is_array()) throw ParseError(std::string("key '") + key + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ParseError(std::string("key '") + key + "' has a non-number");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

    ParsedInstance out;
    try {
        if (doc.contains("q")) out.q = Distribution(parse_array(doc["q"], "q"));
        if (doc.contains("p")) out.p = Distribution(parse_array(doc["p"], "p"));
        if (doc.contains("reference"))
            out.reference = Distribution(parse_array(doc["reference"], "reference"));
        if (doc.contains("cost")) {
            const auto& rows = doc["cost"];
            if (!rows.is_array() || rows.empty())
                throw ParseError("key 'cost' must be a non-empty array of arrays");
            std::size_t ncols = 0;
            std::vector<double> values;
            for (const auto& row : rows) {
                std::vector<double> r = parse_array(row, "cost");
                if (ncols == 0)
                    ncols = r.size();
                else if (r.size() != ncols)
                    throw ParseError("key 'cost' has ragged rows");
                values.insert(values.end(), r.begin(), r.end());
            }
            out.cost = CostMatrix(rows.size(), ncols, std::move(values));
        }
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("invalid instance data: ") + e.what());
    }
    return out;
}

ParsedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

}  // namespace otinfo
