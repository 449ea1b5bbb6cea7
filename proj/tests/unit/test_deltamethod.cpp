#include <doctest.h>

#include <cmath>

#include "subconvex/coeffs.hpp"
#include "subconvex/deltamethod.hpp"
#include "subconvex/errors.hpp"

using namespace subconvex;
using namespace subconvex::delta;

namespace {

const DeltaExpansion& expansion50() {
    static const DeltaExpansion e([] {
        DeltaConfig c;
        c.Q = 50;
        return c;
    }());
    return e;
}

}  // namespace

TEST_CASE("bump w has unit mass on [Q/2, Q]") {
    DeltaConfig cfg;
    cfg.Q = 20;
    CHECK(bump_w(9.99, cfg) == 0);
    CHECK(bump_w(20.01, cfg) == 0);
    double s = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) s += bump_w(10 + 10 * (i + 0.5) / n, cfg);
    CHECK(s * 10 / n == doctest::Approx(1).epsilon(1e-6));
}

TEST_CASE("g weight") {
    DeltaConfig cfg;
    cfg.Q = 50;
    CHECK(g_weight(50, 0.3, cfg) == 1);
    for (double x : {1.5, 3.7, 10.0, 100.0}) CHECK(g_weight(7, x, cfg) == g_weight(7, -x, cfg));
    // g is 1 + O(...) for moderate x
    CHECK(std::abs(g_weight(50, 2.0, cfg) - 1) < 10);
    for (double x : {10.0, 100.0}) CHECK(std::abs(g_weight(3, x, cfg)) <= 1e3 / (x * x));
    CHECK_THROWS_AS(g_weight(0, 1.0, cfg), OutOfRange);
    CHECK_THROWS_AS(g_weight(51, 1.0, cfg), OutOfRange);
    CHECK(n_max(cfg) == 1250);
}

TEST_CASE("config validation") {
    DeltaConfig bad;
    bad.Q = -1;
    CHECK_THROWS_AS(validate(bad), InvalidArgs);
    DeltaConfig ok;
    CHECK_NOTHROW(validate(ok));
}

TEST_CASE("delta expansion at Q = 50") {
    const auto& e = expansion50();
    CHECK(std::abs(e(0) - cplx(1)) <= 1e-3);
    CHECK(std::abs(e(3)) <= 1e-3);
    CHECK(std::abs(e(-7)) <= 1e-3);
    CHECK(std::abs(e(5) - cplx(e.closed_form(5))) < 1e-6);
    CHECK(std::abs(e(0) - cplx(e.closed_form(0))) < 1e-6);
}

TEST_CASE("x integral against its closed form") {
    const auto& e = expansion50();
    for (i64 q : {1, 7, 25, 50})
        for (i64 n : {0, 1, 4, -9}) {
            auto r = e.x_integral(q, n);
            CHECK(std::abs(r.value - e.x_integral_exact(q, n)) <= 1e-6 * (1 + std::abs(r.value)));
        }
    CHECK_THROWS_AS(e.x_integral(51, 0), OutOfRange);
}

TEST_CASE("decompose_sum") {
    DeltaConfig cfg;
    cfg.Q = 40;
    DeltaExpansion e(cfg);
    auto A = coeffs::d3_surrogate(100);
    auto L = coeffs::divisor_surrogate(100, 0);
    for (double t : {0.0, 5.0}) {
        auto r = decompose_sum(A, L, t, 20, e);
        CHECK(r.abs_diff() <= 1e-2 * std::abs(r.direct) + 1e-3);
    }
    auto z = decompose_sum(coeffs::zero_table(100), coeffs::zero_table(100), 0, 20, e);
    CHECK(std::abs(z.direct) == 0);
    CHECK(std::abs(z.decomposed) == 0);
    CHECK_THROWS_AS(decompose_sum(coeffs::d3_surrogate(30), L, 0, 20, e), InsufficientData);
}

TEST_CASE("V and W weights") {
    CHECK(weight_V(1.05) == 0);
    CHECK(weight_V(1.5) > 0);
    CHECK(weight_W(1.5) == doctest::Approx(1));
    CHECK(weight_W(2.5) == 0);
}
