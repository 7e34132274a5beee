#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tt3 {

// One typed cell of a report. Serialization is centralized so that equal
// values always print the same bytes.
using FieldValue = std::variant<long long, double, bool, std::string>;

struct InstanceRecord {
    int index = 0;
    std::vector<std::pair<std::string, FieldValue>> fields;

    void put(std::string name, FieldValue v) { fields.emplace_back(std::move(name), std::move(v)); }
    const FieldValue* find(const std::string& name) const;
};

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Self-describing experiment output. Instances appear in index order; the
// CSV projection emits exactly csv_fields as columns. Reports carry no
// wall-clock data, so equal inputs produce byte-equal serializations.
struct Report {
    std::string experiment;
    std::vector<std::pair<std::string, FieldValue>> params;
    std::uint64_t seed = 0;
    std::vector<std::string> csv_fields;
    std::vector<InstanceRecord> instances;
    std::vector<std::pair<std::string, FieldValue>> aggregates;
    std::vector<Verdict> verdicts;

    void param(std::string name, FieldValue v) { params.emplace_back(std::move(name), std::move(v)); }
    void aggregate(std::string name, FieldValue v) {
        aggregates.emplace_back(std::move(name), std::move(v));
    }
    void verdict(std::string name, bool pass, std::string detail = "") {
        verdicts.push_back({std::move(name), pass, std::move(detail)});
    }
    bool passed() const;
};

std::string field_to_string(const FieldValue& v);

// Canonical JSON document (keys sorted, instance order preserved).
std::string report_json(const Report& r);

// Header line of csv_fields, then one row per instance; missing fields print
// empty cells. Strings are quoted only when they contain a comma or quote.
std::string report_csv(const Report& r);

// Human-oriented summary: parameters, aggregates, one line per verdict.
void print_report(const Report& r, std::ostream& os);

}  // namespace tt3
