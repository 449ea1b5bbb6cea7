#pragma once

#include <chrono>
#include <cstdio>
#include <string>

#include "suites.hpp"

namespace subconvex::suites::detail {

double tol(const RunConfig& cfg, const std::string& key);

class Stopwatch {
public:
    Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_;
};

inline Check make_check(const std::string& suite, const std::string& name, const std::string& anchor,
                        int criterion = 0) {
    Check c;
    c.suite = suite;
    c.name = name;
    c.anchor = anchor;
    c.criterion = criterion;
    return c;
}

inline void verdict(Check& c, bool ok, const std::string& why_not) {
    c.status = ok ? Status::PASS : Status::FAIL;
    if (!ok) c.reason = why_not;
}

// Fails the check when a runtime budget was exceeded; the budget itself goes in the report.
inline void budget(Check& c, const Stopwatch& sw, double limit_s) {
    c.seconds = sw.seconds();
    c.measured["runtime_budget_s"] = limit_s;
    if (c.seconds > limit_s && c.status == Status::PASS) {
        c.status = Status::FAIL;
        c.reason = "runtime over budget";
    }
}

inline std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

SuiteResult arith_suite(const RunConfig& cfg);
SuiteResult charsum_suite(const RunConfig& cfg);
SuiteResult delta_suite(const RunConfig& cfg);
SuiteResult special_suite(const RunConfig& cfg);
SuiteResult oscint_suite(const RunConfig& cfg);
SuiteResult transforms_suite(const RunConfig& cfg);
SuiteResult ledger_suite(const RunConfig& cfg);
SuiteResult voronoi_suite(const RunConfig& cfg);

}  // namespace subconvex::suites::detail
