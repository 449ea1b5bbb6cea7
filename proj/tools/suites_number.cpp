#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "subconvex/arith.hpp"
#include "subconvex/charsum.hpp"
#include "subconvex/coeffs.hpp"
#include "subconvex/deltamethod.hpp"
#include "subconvex/errors.hpp"
#include "suite_util.hpp"

namespace subconvex::suites::detail {

using i64 = std::int64_t;

namespace {

// Exhaustive Weil sweep for one prime: every (a, b) with p not dividing ab.
// S(a, b; p) is real (d -> -d), so only the cosine part is summed.
struct WeilPrime {
    double worst = 0;  // max |S| / (2 sqrt p)
    i64 pairs = 0, violations = 0;
    i64 wa = 0, wb = 0;
};

WeilPrime weil_prime(i64 p, double slack) {
    WeilPrime out;
    std::vector<double> c(static_cast<std::size_t>(p));
    for (i64 j = 0; j < p; ++j) c[j] = std::cos(kTwoPi * double(j) / double(p));
    std::vector<i64> inv(static_cast<std::size_t>(p), 0), x(p), y(p);
    for (i64 d = 1; d < p; ++d) inv[d] = arith::inverse_mod(d, p);
    const double bound = 2 * std::sqrt(double(p));
    for (i64 a = 1; a < p; ++a) {
        for (i64 d = 1; d < p; ++d) {
            x[d] = (a * d) % p;
            y[d] = 0;
        }
        for (i64 b = 1; b < p; ++b) {
            double s = 0;
            for (i64 d = 1; d < p; ++d) {
                i64 yd = y[d] + inv[d];
                if (yd >= p) yd -= p;
                y[d] = yd;
                i64 k = x[d] + yd;
                if (k >= p) k -= p;
                s += c[k];
            }
            ++out.pairs;
            const double r = std::abs(s) / bound;
            if (r > out.worst) {
                out.worst = r;
                out.wa = a;
                out.wb = b;
            }
            if (r > 1 + slack) ++out.violations;
        }
    }
    return out;
}

}  // namespace

SuiteResult arith_suite(const RunConfig& cfg) {
    SuiteResult res;
    std::mt19937_64 rng(cfg.seed);

    {
        Stopwatch sw;
        Check c = make_check("arith", "ramanujan_identity",
                             "Ramanujan sum equals its Mobius divisor sum", 1);
        const double t = tol(cfg, "ramanujan");
        i64 cases = 0, bad = 0;
        double worst = 0;
        for (i64 q = 1; q <= 200; ++q) {
            std::vector<i64> units;
            for (i64 a = 1; a <= q; ++a)
                if (std::gcd(a, q) == 1) units.push_back(a % q);
            auto roots = arith::roots_of_unity(q);
            for (i64 b = 0; b < q; ++b) {
                KahanSum s;
                for (i64 a : units) s.add(roots[(a * b) % q]);
                const cplx v = s.value();
                const i64 f = arith::ramanujan(q, b);
                const double dev = std::max(std::abs(v.real() - double(f)), std::abs(v.imag()));
                worst = std::max(worst, dev);
                if (std::llround(v.real()) != f || dev > t) ++bad;
                ++cases;
            }
        }
        c.measured = {{"q_max", 200}, {"cases", cases}, {"mismatches", bad}, {"max_deviation", worst}};
        verdict(c, bad == 0, std::to_string(bad) + " mismatches");
        budget(c, sw, 10);
        res.checks.push_back(c);
    }

    {
        Stopwatch sw;
        Check c = make_check("arith", "weil_bound", "|S(a,b;p)| <= 2 sqrt(p) for p not dividing ab", 2);
        const double slack = tol(cfg, "weil_slack");
        auto primes = arith::primes_up_to(997);
        std::vector<WeilPrime> parts(primes.size());
        parallel_for(primes.size(), cfg.workers,
                     [&](std::size_t i) { parts[i] = weil_prime(primes[i], slack); });
        i64 pairs = 0, viol = 0;
        double worst = 0;
        i64 wp = 0, wa = 0, wb = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            pairs += parts[i].pairs;
            viol += parts[i].violations;
            if (parts[i].worst > worst) {
                worst = parts[i].worst;
                wp = primes[i];
                wa = parts[i].wa;
                wb = parts[i].wb;
            }
        }
        c.measured = {{"primes", primes.size()}, {"pairs", pairs},         {"violations", viol},
                      {"max_ratio", worst},      {"worst", {wp, wa, wb}}};
        verdict(c, viol == 0, std::to_string(viol) + " pairs above the bound");
        budget(c, sw, 300);
        res.checks.push_back(c);
    }

    {
        Stopwatch sw;
        Check c = make_check("arith", "kloosterman_real", "Kloosterman sums are real");
        double worst = 0;
        i64 cases = 0;
        for (i64 m = 1; m <= 500; ++m) {
            std::uniform_int_distribution<i64> d(0, m - 1);
            for (int k = 0; k < 4; ++k) {
                cplx v = arith::kloosterman({d(rng), d(rng), m});
                worst = std::max(worst, std::abs(v.imag()));
                ++cases;
            }
        }
        c.measured = {{"c_max", 500}, {"samples", cases}, {"max_imag", worst}};
        verdict(c, worst < 1e-9, "imaginary part above 1e-9");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }

    {
        Stopwatch sw;
        Check c = make_check("arith", "kloosterman_twisted_multiplicativity",
                             "S(a,b;c1c2) = S(a c2bar, b c2bar; c1) S(a c1bar, b c1bar; c2)");
        double worst = 0;
        i64 cases = 0;
        for (i64 c1 = 1; c1 <= 60; ++c1)
            for (i64 c2 = c1 + 1; c2 <= 60; ++c2) {
                if (std::gcd(c1, c2) != 1) continue;
                const i64 m = c1 * c2;
                const i64 i1 = c1 == 1 ? 0 : arith::inverse_mod(c2 % c1, c1);
                const i64 i2 = arith::inverse_mod(c1 % c2, c2);
                std::uniform_int_distribution<i64> d(0, m - 1);
                for (int k = 0; k < 2; ++k) {
                    const i64 a = d(rng), b = d(rng);
                    cplx lhs = arith::kloosterman({a, b, m});
                    cplx rhs = arith::kloosterman({arith::mod(a * i1, c1), arith::mod(b * i1, c1), c1}) *
                               arith::kloosterman({arith::mod(a * i2, c2), arith::mod(b * i2, c2), c2});
                    worst = std::max(worst, std::abs(lhs - rhs));
                    ++cases;
                }
            }
        c.measured = {{"c_max", 60}, {"samples", cases}, {"max_abs_diff", worst}};
        verdict(c, worst < 1e-8, "twisted multiplicativity off by more than 1e-8");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }

    {
        Stopwatch sw;
        Check c = make_check("arith", "d3_multiplicative", "d3(mn) = d3(m) d3(n) for coprime m, n");
        auto d = arith::d3_table(1000000);
        i64 cases = 0, bad = 0;
        for (i64 m = 1; m <= 1000; ++m)
            for (i64 n = m; n <= 1000; ++n) {
                if (std::gcd(m, n) != 1) continue;
                ++cases;
                if (d[m * n] != d[m] * d[n]) ++bad;
            }
        i64 spot = 0;
        for (i64 n : {1, 4, 12, 360, 997, 65536})
            if (arith::d3(n) != d[n]) ++spot;
        c.measured = {{"pairs", cases}, {"mismatches", bad}, {"table_vs_factorization", spot}};
        verdict(c, bad == 0 && spot == 0, "d3 multiplicativity or table mismatch");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }

    {
        Stopwatch sw;
        Check c = make_check("arith", "hecke_relation",
                             "A(r,n) from the Hecke relation reproduces the d3 row at r = 1");
        auto row = arith::HeckeRow::d3_surrogate(400);
        auto d = arith::d3_table(400);
        i64 bad = 0;
        for (i64 n = 1; n <= 400; ++n)
            if (std::abs(arith::hecke_expand(1, n, row) - cplx(double(d[n]))) > 1e-12) ++bad;
        const cplx a22 = arith::hecke_expand(2, 2, row), a23 = arith::hecke_expand(2, 3, row);
        c.measured = {{"r1_mismatches", bad}, {"A(2,2)", a22.real()}, {"A(2,3)", a23.real()}};
        verdict(c, bad == 0 && a22 == cplx(8) && a23 == cplx(9), "Hecke expansion mismatch");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }

    {
        Stopwatch sw;
        Check c = make_check("arith", "rankin_selberg_growth",
                             "partial sums of |coefficients|^2 grow like N times logs");
        arith::RsConfig c2;
        c2.log_power = 3;
        auto r2 = arith::rs_partial_sum_check(coeffs::divisor_surrogate(10000, 0.0), 10000, c2);
        arith::RsConfig c3;
        c3.log_power = 2;
        auto r3 = arith::rs_partial_sum_check(coeffs::d3_surrogate(20000), 10000, c3);
        auto rz = arith::rs_partial_sum_check(coeffs::zero_table(10000), 10000, {});
        json s2 = json::array(), s3 = json::array();
        for (const auto& p : r2.sweep) s2.push_back({p.N, p.ratio, p.normalized});
        for (const auto& p : r3.sweep) s3.push_back({p.N, p.ratio, p.normalized});
        const double z = rz.sweep.empty() ? 0 : rz.sweep.back().ratio;
        c.measured = {{"divisor_sweep", s2}, {"d3_sweep", s3}, {"zero_ratio", z}};
        verdict(c, !r2.violation && !r3.violation && z == 0, "partial sums outside the band");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }
    return res;
}

SuiteResult charsum_suite(const RunConfig& cfg) {
    SuiteResult res;
    {
        Stopwatch sw;
        Check c = make_check("charsum", "reduction_exact",
                             "the character sum C equals its divisor-sum reduction", 3);
        const double t = tol(cfg, "reduction");
        auto r = charsum::run_reduction_sweep(40, 4, 12, t, cfg.workers);
        c.measured = {{"q_max", 40},
                      {"r_max", 4},
                      {"n2_m_max", 12},
                      {"cases", r.cases},
                      {"max_abs_diff", r.max_abs_diff},
                      {"failures", r.failures.size()}};
        verdict(c, r.failures.empty() && r.max_abs_diff <= t, "oracle and reduced form disagree");
        budget(c, sw, 120);
        res.checks.push_back(c);
    }
    {
        Stopwatch sw;
        Check c = make_check("charsum", "frak_c_support_and_majorant",
                             "frak C(0) vanishes unless q2 = q2'; |frak C(n)| is below the divisor majorant",
                             4);
        charsum::SweepConfig sc;
        sc.zero_tol = tol(cfg, "frak_zero");
        sc.rel_tol = tol(cfg, "majorant_slack");
        sc.workers = cfg.workers;
        auto r = charsum::run_frak_sweep(sc);
        i64 zero_fail = 0, bound_fail = 0;
        for (const auto& f : r.failures) (std::string(f.kind) == "majorant" ? bound_fail : zero_fail)++;
        json first = json::array();
        for (std::size_t i = 0; i < std::min<std::size_t>(5, r.failures.size()); ++i) {
            const auto& f = r.failures[i];
            first.push_back({{"kind", f.kind},
                             {"n", f.args.n},
                             {"q1", f.args.q1},
                             {"q2", f.args.q2},
                             {"q2p", f.args.q2p},
                             {"m", f.args.m},
                             {"mp", f.args.mp},
                             {"n1", f.args.n1},
                             {"r", f.args.r},
                             {"value", f.value},
                             {"bound", f.bound}});
        }
        c.measured = {{"max_modulus", sc.max_modulus},
                      {"configurations", r.configurations},
                      {"evaluations", r.evaluations},
                      {"zero_checks", r.zero_checks},
                      {"bound_checks", r.bound_checks},
                      {"worst_zero", r.worst_zero},
                      {"worst_ratio", r.worst_ratio},
                      {"zero_failures", zero_fail},
                      {"majorant_failures", bound_fail},
                      {"first_failures", first}};
        verdict(c, r.failures.empty(), "support or majorant violated");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }
    {
        Stopwatch sw;
        Check c = make_check("charsum", "frak_c_period_vs_direct",
                             "frak C from period vectors equals the direct beta-average");
        std::mt19937_64 rng(cfg.seed ^ 0x5eedULL);
        charsum::SweepConfig sc;
        sc.max_modulus = 60;
        auto all = charsum::sweep_configurations(sc);
        std::shuffle(all.begin(), all.end(), rng);
        double worst = 0;
        i64 cases = 0;
        for (std::size_t i = 0; i < std::min<std::size_t>(40, all.size()); ++i) {
            auto a = all[i];
            for (i64 n : {-3, 0, 2}) {
                a.n = n;
                a.m = 1 + i % 3;
                a.mp = 1 + (i / 3) % 3;
                worst = std::max(worst, std::abs(charsum::frak_C(a) - charsum::frak_C_direct(a)));
                ++cases;
            }
        }
        charsum::FrakCArgs one;
        const cplx unit = charsum::frak_C(one);
        c.measured = {{"cases", cases}, {"max_abs_diff", worst}, {"modulus_one", unit.real()}};
        verdict(c, worst < 1e-8 && std::abs(unit - cplx(1)) < 1e-12, "period and direct forms disagree");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }
    return res;
}

SuiteResult delta_suite(const RunConfig& cfg) {
    SuiteResult res;
    CsvTable csv;
    csv.file = "delta_error.csv";
    csv.notes = {"delta expansion error |delta_expand(n) - delta(n)| against Q",
                 "columns: Q, n, real part of the expansion, absolute error"};
    csv.columns = {"Q", "n", "value", "error"};

    std::map<double, double> worst;
    double q50_100_seconds = 0;
    for (double Q : {25.0, 50.0, 100.0}) {
        Stopwatch sw;
        delta::DeltaConfig dc;
        dc.Q = Q;
        delta::DeltaExpansion e(dc);
        double w = 0;
        for (i64 n = -10; n <= 10; ++n) {
            const cplx v = e(n);
            const double err = std::abs(v - cplx(n == 0 ? 1.0 : 0.0));
            w = std::max(w, err);
            csv.rows.push_back({num(Q), std::to_string(n), num(v.real()), num(err)});
        }
        worst[Q] = w;
        if (Q >= 50) q50_100_seconds += sw.seconds();
    }
    {
        Check c = make_check("delta", "delta_expansion",
                             "the delta expansion reproduces delta(n) and improves with Q", 5);
        const double t = tol(cfg, "delta");
        c.measured = {{"n_range", 10},
                      {"max_error_Q25", worst[25]},
                      {"max_error_Q50", worst[50]},
                      {"max_error_Q100", worst[100]}};
        const bool ok = worst[50] <= t && worst[100] < worst[50];
        verdict(c, ok, "error above tolerance at Q = 50 or not shrinking at Q = 100");
        c.seconds = q50_100_seconds;
        c.measured["runtime_budget_s"] = 60;
        if (q50_100_seconds > 60 && c.status == Status::PASS) {
            c.status = Status::FAIL;
            c.reason = "runtime over budget";
        }
        res.checks.push_back(c);

        Check m = make_check("delta", "delta_error_monotone", "error decreases as Q doubles");
        m.measured = c.measured;
        verdict(m, worst[50] < worst[25] && worst[100] < worst[50], "error not decreasing");
        res.checks.push_back(m);
    }
    {
        Stopwatch sw;
        Check c = make_check("delta", "g_weight_shape", "g(q,x) is even, near 1 for small x, decays in x");
        delta::DeltaConfig dc;
        dc.Q = 50;
        double asym = 0, near1 = 0, decay = 0;
        for (i64 q : {1, 7, 25, 50}) {
            for (double x : {0.3, 2.5, 10.0, 100.0})
                asym = std::max(asym, std::abs(delta::g_weight(q, x, dc) - delta::g_weight(q, -x, dc)));
            near1 = std::max(near1, std::abs(delta::g_weight(q, 0.5, dc) - 1));
            for (double x : {10.0, 100.0})
                decay = std::max(decay, std::abs(delta::g_weight(q, x, dc)) * x * x);
        }
        c.measured = {{"max_asymmetry", asym}, {"max_dev_from_1_at_half", near1}, {"max_x2_g", decay}};
        verdict(c, asym == 0 && near1 < 1e-12 && decay < 1e3, "g weight shape off");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }
    {
        Stopwatch sw;
        Check c = make_check("delta", "decompose_sum",
                             "the bilinear sum equals its delta-decomposed form");
        auto A = coeffs::d3_surrogate(200);
        auto L = coeffs::divisor_surrogate(200, 0.0);
        delta::DeltaConfig dc;
        dc.Q = 40;
        delta::DeltaExpansion e(dc);
        json grid = json::array();
        bool ok = true;
        for (i64 N : {10, 20, 40})
            for (double t : {0.0, 2.0, 8.0}) {
                auto r = delta::decompose_sum(A, L, t, N, e);
                const double lim = 1e-2 * std::abs(r.direct) + 1e-3;
                ok = ok && r.abs_diff() <= lim;
                grid.push_back({{"N", N}, {"t", t}, {"direct_abs", std::abs(r.direct)}, {"abs_diff", r.abs_diff()}});
            }
        c.measured = {{"Q", 40}, {"grid", grid}};
        verdict(c, ok, "decomposition differs from the direct sum");
        c.seconds = sw.seconds();
        res.checks.push_back(c);
    }
    res.tables.push_back(std::move(csv));
    return res;
}

}  // namespace subconvex::suites::detail
