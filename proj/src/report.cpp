#include "tt3/report.hpp"

#include <ostream>

#include "json.hpp"

namespace tt3 {

namespace {

nlohmann::json to_json_value(const FieldValue& v) {
    switch (v.index()) {
        case 0: return std::get<long long>(v);
        case 1: return std::get<double>(v);
        case 2: return std::get<bool>(v);
        default: return std::get<std::string>(v);
    }
}

nlohmann::json pairs_to_json(const std::vector<std::pair<std::string, FieldValue>>& pairs) {
    nlohmann::json obj = nlohmann::json::object();
    for (const auto& [k, v] : pairs) obj[k] = to_json_value(v);
    return obj;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

const FieldValue* InstanceRecord::find(const std::string& name) const {
    for (const auto& [k, v] : fields)
        if (k == name) return &v;
    return nullptr;
}

bool Report::passed() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

std::string field_to_string(const FieldValue& v) {
    switch (v.index()) {
        case 0: return std::to_string(std::get<long long>(v));
        case 1: return nlohmann::json(std::get<double>(v)).dump();
        case 2: return std::get<bool>(v) ? "true" : "false";
        default: return std::get<std::string>(v);
    }
}

std::string report_json(const Report& r) {
    nlohmann::json doc;
    doc["experiment"] = r.experiment;
    doc["seed"] = r.seed;
    doc["parameters"] = pairs_to_json(r.params);
    nlohmann::json insts = nlohmann::json::array();
    for (const auto& rec : r.instances) {
        nlohmann::json row = pairs_to_json(rec.fields);
        row["index"] = rec.index;
        insts.push_back(std::move(row));
    }
    doc["instances"] = std::move(insts);
    doc["aggregates"] = pairs_to_json(r.aggregates);
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : r.verdicts)
        vs.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    doc["verdicts"] = std::move(vs);
    doc["passed"] = r.passed();
    return doc.dump(2) + "\n";
}

std::string report_csv(const Report& r) {
    std::string out;
    out += "index";
    for (const auto& f : r.csv_fields) {
        out += ',';
        out += csv_escape(f);
    }
    out += '\n';
    for (const auto& rec : r.instances) {
        out += std::to_string(rec.index);
        for (const auto& f : r.csv_fields) {
            out += ',';
            if (const FieldValue* v = rec.find(f)) out += csv_escape(field_to_string(*v));
        }
        out += '\n';
    }
    return out;
}

void print_report(const Report& r, std::ostream& os) {
    os << "experiment: " << r.experiment << " (seed " << r.seed << ")\n";
    for (const auto& [k, v] : r.params) os << "  param " << k << " = " << field_to_string(v) << "\n";
    os << "  instances: " << r.instances.size() << "\n";
    for (const auto& [k, v] : r.aggregates) os << "  " << k << " = " << field_to_string(v) << "\n";
    for (const auto& v : r.verdicts) {
        os << "  [" << (v.pass ? "PASS" : "FAIL") << "] " << v.name;
        if (!v.detail.empty()) os << ": " << v.detail;
        os << "\n";
    }
    os << (r.passed() ? "PASSED" : "FAILED") << "\n";
}

}  // namespace tt3
