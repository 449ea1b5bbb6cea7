#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "subconvex/errors.hpp"
#include "suite_util.hpp"

namespace subconvex::suites {

namespace fs = std::filesystem;

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"arith",  "charsum",    "delta",  "special",
                                                   "oscint", "transforms", "ledger", "voronoi"};
    return names;
}

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> t = {
        {"ramanujan", 1e-6},        // brute-force float sum vs integer formula
        {"weil_slack", 1e-9},       // |S| <= 2 sqrt(p) (1 + slack)
        {"reduction", 1e-8},        // oracle vs reduced character sum
        {"frak_zero", 1e-6},        // |frak C(0)| when q2 != q2'
        {"majorant_slack", 1e-6},   // |frak C(n)| <= bound (1 + slack)
        {"delta", 1e-3},            // |delta_expand(n) - delta(n)|
        {"g_identity", 1e-4},       // Mellin vs Bessel form of G
        {"window_collapse", 1e3},   // peak over off-window |G|
        {"window_low", 0.05},       // |G| / (yN)^{1/2} inside the window
        {"window_high", 20},
        {"series_C", 10},           // |series - root| <= C (B/|T'|)^4
        {"stationary", 0.05},       // |quadrature / leading - 1| at Y = 1e3
        {"voronoi", 1e-2},          // relative Voronoi discrepancy
        {"psi_mismatch", 1e-3},     // mismatched over matched |Psi|
        {"psi_phase", 0.05},        // relative error of the Psi phase increment
        {"frak_cutoff_drop", 1e3},  // |frak I(0)| over |frak I(n)| past the cutoff
        {"frak_mid_C", 10},         // constant in the mid-range frak I bound
    };
    return t;
}

void apply_tolerance(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("tolerance override must read key=value");
    const std::string key = assignment.substr(0, eq);
    if (!default_tolerances().count(key)) throw ConfigError("unknown tolerance key '" + key + "'");
    double v = 0;
    try {
        std::size_t used = 0;
        v = std::stod(assignment.substr(eq + 1), &used);
        if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw ConfigError("bad tolerance value in '" + assignment + "'");
    }
    if (!(v > 0)) throw ConfigError("tolerance '" + key + "' must be positive");
    cfg.tolerance[key] = v;
}

void validate(const RunConfig& cfg) {
    if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
    const auto& n = suite_names();
    if (cfg.suite != "all" && std::find(n.begin(), n.end(), cfg.suite) == n.end())
        throw ConfigError("unknown suite '" + cfg.suite + "'");
    for (const auto& [k, v] : cfg.tolerance)
        if (!default_tolerances().count(k)) throw ConfigError("unknown tolerance key '" + k + "'");
    if (!cfg.data.empty() && !fs::exists(cfg.data))
        throw ConfigError("data file '" + cfg.data + "' does not exist");
}

std::string to_string(Status s) {
    switch (s) {
        case Status::PASS: return "PASS";
        case Status::FAIL: return "FAIL";
        case Status::SKIPPED: return "SKIPPED";
    }
    return "?";
}

bool SuiteResult::all_passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](const Check& c) { return c.status == Status::FAIL; });
}

json SuiteResult::failures() const {
    json f = json::array();
    for (const auto& c : checks)
        if (c.status == Status::FAIL)
            f.push_back({{"suite", c.suite}, {"name", c.name}, {"reason", c.reason}});
    return f;
}

namespace detail {

double tol(const RunConfig& cfg, const std::string& key) {
    auto it = cfg.tolerance.find(key);
    if (it != cfg.tolerance.end()) return it->second;
    return default_tolerances().at(key);
}

}  // namespace detail

SuiteResult run_named(const std::string& suite, const RunConfig& cfg) {
    using namespace detail;
    if (suite == "arith") return arith_suite(cfg);
    if (suite == "charsum") return charsum_suite(cfg);
    if (suite == "delta") return delta_suite(cfg);
    if (suite == "special") return special_suite(cfg);
    if (suite == "oscint") return oscint_suite(cfg);
    if (suite == "transforms") return transforms_suite(cfg);
    if (suite == "ledger") return ledger_suite(cfg);
    if (suite == "voronoi") return voronoi_suite(cfg);
    throw ConfigError("unknown suite '" + suite + "'");
}

SuiteResult run_suite(const RunConfig& cfg) {
    validate(cfg);
    if (cfg.suite != "all") return run_named(cfg.suite, cfg);
    SuiteResult all;
    for (const auto& s : suite_names()) {
        SuiteResult r = run_named(s, cfg);
        all.checks.insert(all.checks.end(), r.checks.begin(), r.checks.end());
        all.tables.insert(all.tables.end(), r.tables.begin(), r.tables.end());
    }
    return all;
}

json report_json(const SuiteResult& r, const RunConfig& cfg) {
    json tol = json::object();
    for (const auto& [k, v] : default_tolerances()) tol[k] = detail::tol(cfg, k);
    json checks = json::array();
    std::size_t pass = 0, fail = 0, skip = 0;
    for (const auto& c : r.checks) {
        json j = {{"suite", c.suite},         {"name", c.name},
                  {"anchor", c.anchor},       {"criterion", c.criterion},
                  {"status", to_string(c.status)}};
        if (!c.reason.empty()) j["reason"] = c.reason;
        j["measured"] = c.measured;
        checks.push_back(std::move(j));
        (c.status == Status::PASS ? pass : c.status == Status::FAIL ? fail : skip)++;
    }
    return {{"schema_version", kSchemaVersion},
            {"suite", cfg.suite},
            {"seed", cfg.seed},
            {"data", cfg.data},
            {"tolerances", tol},
            {"summary", {{"pass", pass}, {"fail", fail}, {"skipped", skip}}},
            {"checks", checks},
            {"failures", r.failures()}};
}

namespace {

void write_csv(const CsvTable& t, const fs::path& dir) {
    std::ofstream f(dir / t.file, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (dir / t.file).string());
    for (const auto& n : t.notes) f << "# " << n << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) f << (i ? "," : "") << t.columns[i];
    f << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
        f << "\n";
    }
}

std::string utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void write_outputs(const SuiteResult& r, const RunConfig& cfg) {
    const fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + dir.string() + ": " + ec.message());

    {
        std::ofstream f(dir / "report.json", std::ios::binary);
        if (!f) throw ConfigError("cannot write " + (dir / "report.json").string());
        f << report_json(r, cfg).dump(2) << "\n";
    }
    for (const auto& t : r.tables) write_csv(t, dir);

    json timings = json::array();
    for (const auto& c : r.checks)
        timings.push_back({{"suite", c.suite}, {"name", c.name}, {"seconds", c.seconds}});
    json meta = {{"finished_utc", utc_now()}, {"workers", cfg.workers}, {"timings", timings}};
    std::ofstream f(dir / "run_meta.json", std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (dir / "run_meta.json").string());
    f << meta.dump(2) << "\n";
}

int exit_code(const SuiteResult& r) { return r.all_passed() ? 0 : 1; }

}  // namespace subconvex::suites
