#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subconvex/errors.hpp"
#include "suites.hpp"

using namespace subconvex;
using namespace subconvex::suites;

namespace {

struct Common {
    RunConfig cfg;
    std::vector<std::string> tolerances;
};

// Flags shared by every subcommand. Each can also come from SUBCONVEX_<NAME>.
void add_common(CLI::App* app, Common& c) {
    app->add_option("--output-dir", c.cfg.output_dir, "directory for report.json and CSV files")
        ->envname("SUBCONVEX_OUTPUT_DIR");
    app->add_option("--workers", c.cfg.workers, "worker threads")
        ->envname("SUBCONVEX_WORKERS")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", c.cfg.seed, "seed for sampled checks")->envname("SUBCONVEX_SEED");
    app->add_option("--tolerance", c.tolerances, "override a tolerance, key=value (repeatable)")
        ->envname("SUBCONVEX_TOLERANCE")
        ->delimiter(',');
    app->add_option("--data", c.cfg.data, "GL2 Maass coefficient file")->envname("SUBCONVEX_DATA");
}

void print_summary(const SuiteResult& r, std::ostream& out) {
    for (const auto& c : r.checks) {
        out << to_string(c.status) << "  " << c.suite << "/" << c.name;
        if (!c.reason.empty()) out << "  (" << c.reason << ")";
        out << "\n";
    }
}

int finish(const SuiteResult& r, Common& c) {
    write_outputs(r, c.cfg);
    print_summary(r, std::cout);
    if (!r.all_passed()) std::cerr << r.failures().dump(2) << "\n";
    return exit_code(r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for the GL(3) x GL(2) subconvexity argument"};
    app.require_subcommand(1);

    Common run_c, led_c, del_c, tr_c, vor_c, cs_c;

    auto* run = app.add_subcommand("run", "run a verification suite");
    add_common(run, run_c);
    run->add_option("--suite", run_c.cfg.suite, "arith, charsum, delta, special, oscint, transforms, ledger, "
                                                 "voronoi or all")
        ->envname("SUBCONVEX_SUITE");

    std::string a_text = "1";
    long long denominator = 280;
    auto* led = app.add_subcommand("ledger-optimize", "optimize K for |T'| = T^a");
    add_common(led, led_c);
    led->add_option("--a", a_text, "rational exponent a in [3/5, 1]")->envname("SUBCONVEX_A");
    led->add_option("--denominator", denominator, "grid step 1/denominator")->check(CLI::PositiveNumber);

    double Q = 50;
    int n_range = 10;
    auto* del = app.add_subcommand("delta-verify", "check the delta expansion at one Q");
    add_common(del, del_c);
    del->add_option("--Q", Q, "expansion parameter (>= 10)")->envname("SUBCONVEX_Q");
    del->add_option("--n-range", n_range, "check |n| <= n-range")->check(CLI::NonNegativeNumber);

    auto* tr = app.add_subcommand("transforms-verify", "the transforms suite");
    add_common(tr, tr_c);
    auto* vor = app.add_subcommand("voronoi", "two-sided GL2 Voronoi check against --data");
    add_common(vor, vor_c);
    auto* cs = app.add_subcommand("charsum-sweep", "character sum reduction and majorant sweeps");
    add_common(cs, cs_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto prepare = [](Common& c, const std::string& suite) {
            if (!suite.empty()) c.cfg.suite = suite;
            for (const auto& t : c.tolerances) apply_tolerance(c.cfg, t);
            validate(c.cfg);
        };
        if (*run) {
            prepare(run_c, "");
            return finish(run_suite(run_c.cfg), run_c);
        }
        if (*led) {
            prepare(led_c, "ledger");
            auto r = ledger_optimize(a_text, denominator);
            std::cout << r.checks.front().measured.dump() << "\n";
            write_outputs(r, led_c.cfg);
            return exit_code(r);
        }
        if (*del) {
            prepare(del_c, "delta");
            return finish(delta_verify(Q, n_range, del_c.cfg), del_c);
        }
        if (*tr) {
            prepare(tr_c, "transforms");
            return finish(run_suite(tr_c.cfg), tr_c);
        }
        if (*vor) {
            prepare(vor_c, "voronoi");
            return finish(run_suite(vor_c.cfg), vor_c);
        }
        if (*cs) {
            prepare(cs_c, "charsum");
            return finish(run_suite(cs_c.cfg), cs_c);
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InsufficientData& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidArgs& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
