#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qglab/quantum_group.hpp"

namespace qglab {

struct SuiteConfig {
    std::vector<std::string> instances;  // instance file paths
    std::vector<std::string> builtins;   // builtin names; all builtins when both lists are empty
    std::string suite = "all";
    std::uint64_t seed = 1;
    double tol = 0.0;  // 0 keeps the per-check defaults, otherwise replaces every tolerance
    int trials = 50;
    int copies = 4;
    int length = 4;
    long dim_cap = 0;  // 0 means default_dim_cap()
    std::string format = "json";
};

void check_config(const SuiteConfig& cfg);
std::vector<std::string> suite_names();

// relation: "<=" (value <= bound + tol), ">=" (value >= bound - tol) or "info" (always passes).
struct Record {
    std::string name;
    std::string anchor;
    std::string digest;
    std::string relation = "<=";
    double value = 0.0;
    double bound = 0.0;
    double tol = 0.0;
    bool pass = true;
    double runtime_ms = 0.0;
    std::string note;
};

struct SuiteReport {
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::vector<Record> records;

    bool pass() const;
    const Record* find(const std::string& name) const;
    void sort();
};

// Runs the selected suites; StructuralError and BudgetError propagate, other failures become records.
SuiteReport run_suite(const SuiteConfig& cfg);

nlohmann::ordered_json report_to_json(const SuiteReport& report, bool with_runtime = true);
// format: "json" or "md"
std::string emit_report(const SuiteReport& report, const std::string& format, bool with_runtime = true);

std::string digest_hex(const std::string& text);

// Writes every builtin instance as <dir>/<name>.json and returns the paths.
std::vector<std::string> export_corpus(const std::string& dir);

}  // namespace qglab
