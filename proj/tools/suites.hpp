#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace subconvex::suites {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::string suite = "all";
    std::uint64_t seed = 20240601;
    std::map<std::string, double> tolerance;  // overrides, see default_tolerances()
    std::string output_dir = "out";
    unsigned workers = 1;
    std::string data;  // Maass coefficient file for the voronoi suite
};

const std::vector<std::string>& suite_names();  // without "all"
const std::map<std::string, double>& default_tolerances();

// "key=value" pairs; ConfigError on an unknown key or a bad value.
void apply_tolerance(RunConfig& cfg, const std::string& assignment);
void validate(const RunConfig& cfg);  // ConfigError

enum class Status { PASS, FAIL, SKIPPED };
std::string to_string(Status s);

struct Check {
    std::string suite;
    std::string name;
    std::string anchor;  // the claim being tested, in words
    int criterion = 0;   // acceptance criterion number, 0 for none
    Status status = Status::PASS;
    std::string reason;
    json measured = json::object();
    double seconds = 0;  // wall time; kept out of report.json
};

struct CsvTable {
    std::string file;
    std::vector<std::string> notes;  // written as leading "# " lines
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct SuiteResult {
    std::vector<Check> checks;
    std::vector<CsvTable> tables;

    bool all_passed() const;
    json failures() const;
};

SuiteResult run_suite(const RunConfig& cfg);
SuiteResult run_named(const std::string& suite, const RunConfig& cfg);

// Single pieces the CLI exposes directly.
SuiteResult ledger_optimize(const std::string& a, long long denominator);
SuiteResult delta_verify(double Q, int n_range, const RunConfig& cfg);

json report_json(const SuiteResult& r, const RunConfig& cfg);
// report.json, one CSV per table and run_meta.json (timestamps, timings).
void write_outputs(const SuiteResult& r, const RunConfig& cfg);

// 0 all pass, 1 a check failed
int exit_code(const SuiteResult& r);

}  // namespace subconvex::suites
