#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "subconvex/errors.hpp"
#include "suites.hpp"

using namespace subconvex;
using namespace subconvex::suites;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("tolerance overrides") {
    RunConfig cfg;
    apply_tolerance(cfg, "delta=2e-3");
    CHECK(cfg.tolerance.at("delta") == 2e-3);
    CHECK_THROWS_AS(apply_tolerance(cfg, "delta"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance(cfg, "nonsense=1"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance(cfg, "delta=abc"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance(cfg, "delta=1e-3x"), ConfigError);
    CHECK_THROWS_AS(apply_tolerance(cfg, "delta=-1"), ConfigError);
}

TEST_CASE("config validation") {
    RunConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    cfg.suite = "bogus";
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.suite = "ledger";
    cfg.workers = 0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.workers = 1;
    cfg.data = "/nonexistent/coefficients.txt";
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    CHECK(suite_names().size() == 8);
}

TEST_CASE("ledger suite report") {
    RunConfig cfg;
    cfg.suite = "ledger";
    auto r = run_suite(cfg);
    CHECK(r.all_passed());
    CHECK(exit_code(r) == 0);
    auto j = report_json(r, cfg);
    CHECK(j["schema_version"] == kSchemaVersion);
    bool found = false;
    for (const auto& c : j["checks"])
        if (c["name"] == "optimize_K")
            for (const auto& g : c["measured"]["grid"])
                if (g["a"] == "1" && g["sup"] == "27/20" && g["paper_match"] == true) found = true;
    CHECK(found);
}

TEST_CASE("voronoi without data is skipped and passes") {
    RunConfig cfg;
    cfg.suite = "voronoi";
    auto r = run_suite(cfg);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].status == Status::SKIPPED);
    CHECK_FALSE(r.checks[0].reason.empty());
    CHECK(exit_code(r) == 0);
    CHECK(r.failures().empty());
}

TEST_CASE("a failing check gives exit code 1 and a failure entry") {
    SuiteResult r;
    Check c;
    c.suite = "x";
    c.name = "y";
    c.status = Status::FAIL;
    c.reason = "because";
    r.checks.push_back(c);
    CHECK(exit_code(r) == 1);
    CHECK(r.failures().size() == 1);
    CHECK(r.failures()[0]["reason"] == "because");
}

TEST_CASE("report files are deterministic") {
    const fs::path root = fs::temp_directory_path() / "subconvex_report_test";
    fs::remove_all(root);
    RunConfig a;
    a.suite = "special";
    a.output_dir = (root / "a").string();
    RunConfig b = a;
    b.output_dir = (root / "b").string();
    b.workers = 3;
    write_outputs(run_suite(a), a);
    write_outputs(run_suite(b), b);
    CHECK(fs::exists(root / "a" / "report.json"));
    CHECK(fs::exists(root / "a" / "run_meta.json"));
    CHECK(slurp(root / "a" / "report.json") == slurp(root / "b" / "report.json"));
    fs::remove_all(root);
}

TEST_CASE("CSV output carries notes and a header") {
    const fs::path root = fs::temp_directory_path() / "subconvex_csv_test";
    fs::remove_all(root);
    RunConfig cfg;
    cfg.suite = "ledger";
    cfg.output_dir = root.string();
    write_outputs(run_suite(cfg), cfg);
    const std::string csv = slurp(root / "ledger_sup.csv");
    CHECK(csv.rfind("# ", 0) == 0);
    CHECK(csv.find("a,k_opt,j_opt,sup") != std::string::npos);
    CHECK(csv.find("1,4/5,0,27/20") != std::string::npos);
    fs::remove_all(root);
}

TEST_CASE("ledger_optimize and delta_verify entry points") {
    auto r = ledger_optimize("1", 280);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].measured["sup"] == "27/20");
    CHECK_THROWS_AS(ledger_optimize("0.5", 280), ParseError);
    RunConfig cfg;
    auto d = delta_verify(20, 3, cfg);
    CHECK(d.checks[0].measured["max_error"].get<double>() < 1e-2);
}
