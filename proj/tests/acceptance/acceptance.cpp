// Runs the suites that hold acceptance checks and prints one line per criterion.
// SUBCONVEX_DATA points the Voronoi check at a Maass coefficient file.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>

#include "subconvex/errors.hpp"
#include "suites.hpp"

using namespace subconvex::suites;

int main() {
    RunConfig cfg;
    if (const char* d = std::getenv("SUBCONVEX_DATA")) cfg.data = d;
    if (const char* w = std::getenv("SUBCONVEX_WORKERS")) cfg.workers = static_cast<unsigned>(std::atoi(w));
    if (cfg.workers < 1) cfg.workers = 1;

    std::map<int, Check> by_criterion;
    for (const std::string suite : {"arith", "charsum", "delta", "transforms", "ledger", "oscint", "voronoi"}) {
        try {
            validate(cfg);
            for (auto& c : run_named(suite, cfg).checks)
                if (c.criterion > 0) by_criterion[c.criterion] = c;
        } catch (const subconvex::Error& e) {
            std::cerr << suite << ": " << e.what() << "\n";
        }
    }

    int failed = 0;
    for (int k = 1; k <= 11; ++k) {
        auto it = by_criterion.find(k);
        if (it == by_criterion.end()) {
            std::printf("criterion %2d: FAIL  (no check ran)\n", k);
            ++failed;
            continue;
        }
        const Check& c = it->second;
        std::printf("criterion %2d: %-7s %s/%s  %.1fs%s%s\n", k, to_string(c.status).c_str(), c.suite.c_str(),
                    c.name.c_str(), c.seconds, c.reason.empty() ? "" : "  ", c.reason.c_str());
        if (c.status == Status::FAIL) ++failed;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
