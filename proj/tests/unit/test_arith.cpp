#include <doctest.h>

#include <cmath>
#include <numeric>

#include "subconvex/arith.hpp"
#include "subconvex/coeffs.hpp"
#include "subconvex/errors.hpp"

using namespace subconvex;
using namespace subconvex::arith;

namespace {

// sum over d coprime to c of e((a d + b dbar)/c), inverse found by search
cplx kloosterman_brute(i64 a, i64 b, i64 c) {
    cplx s = 0;
    for (i64 d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        i64 dbar = 0;
        while ((d * dbar) % c != 1 % c) ++dbar;
        s += std::polar(1.0, kTwoPi * static_cast<double>(mod(a * d + b * dbar, c)) / static_cast<double>(c));
    }
    return s;
}

i64 d3_brute(i64 n) {
    i64 k = 0;
    for (i64 a = 1; a <= n; ++a)
        for (i64 b = 1; a * b <= n; ++b)
            if (n % (a * b) == 0) ++k;
    return k;
}

}  // namespace

TEST_CASE("kloosterman small moduli") {
    CHECK(std::abs(kloosterman({1, 1, 1}) - cplx(1)) < 1e-12);
    CHECK(std::abs(kloosterman({1, 1, 3}) - cplx(-1)) < 1e-12);
    for (i64 c = 1; c <= 30; ++c)
        for (i64 a = -3; a <= 3; ++a)
            for (i64 b = 0; b <= 4; ++b) {
                cplx k = kloosterman({a, b, c});
                CHECK(std::abs(k - kloosterman_brute(a, b, c)) < 1e-9);
                CHECK(std::abs(k.imag()) < 1e-9);
            }
}

TEST_CASE("kloosterman with a = 0 is the Ramanujan sum") {
    for (i64 q = 1; q <= 40; ++q)
        for (i64 b = 0; b < q; ++b) CHECK(std::abs(kloosterman({0, b, q}) - cplx(double(ramanujan(q, b)))) < 1e-9);
}

TEST_CASE("ramanujan examples") {
    CHECK(ramanujan(4, 2) == -2);
    CHECK(ramanujan(1, 12345) == 1);
    CHECK(ramanujan(5, 0) == 4);
    CHECK(ramanujan(12, 0) == euler_phi(12));
}

TEST_CASE("inverse_mod") {
    CHECK(inverse_mod(3, 7) == 5);
    CHECK(inverse_mod(1, 9) == 1);
    CHECK(inverse_mod(-1, 9) == 8);
    CHECK_THROWS_AS(inverse_mod(2, 4), NotCoprime);
    for (i64 q = 2; q <= 60; ++q)
        for (i64 a = 1; a < q; ++a)
            if (gcd(a, q) == 1) {
                i64 x = inverse_mod(a, q);
                CHECK(x >= 0);
                CHECK(x < q);
                CHECK(mod(a * x, q) == 1);
            }
}

TEST_CASE("d3 against enumeration") {
    CHECK(d3(1) == 1);
    CHECK(d3(4) == 6);
    for (i64 p : {2, 3, 97, 997}) CHECK(d3(p) == 3);
    for (i64 n = 1; n <= 300; ++n) CHECK(d3(n) == d3_brute(n));
    auto t = d3_table(300);
    for (i64 n = 1; n <= 300; ++n) CHECK(t[n] == d3(n));
    auto dt = divisor_table(300);
    for (i64 n = 1; n <= 300; ++n) CHECK(dt[n] == divisor_count(n));
}

TEST_CASE("number theory helpers") {
    CHECK(gcd(12, 18) == 6);
    CHECK(lcm(4, 6) == 12);
    CHECK(mod(-7, 5) == 3);
    CHECK(mobius(1) == 1);
    CHECK(mobius(6) == 1);
    CHECK(mobius(12) == 0);
    CHECK(mobius(30) == -1);
    CHECK(euler_phi(36) == 12);
    CHECK(divisors(12) == std::vector<i64>{1, 2, 3, 4, 6, 12});
    CHECK(primes_up_to(20) == std::vector<i64>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(is_prime(997));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
    auto f = factorize(360);
    CHECK(f == std::vector<std::pair<i64, int>>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(std::abs(e_frac(1, 4) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(e_frac(3, 6) - cplx(-1, 0)) < 1e-15);
}

TEST_CASE("hecke_expand") {
    auto row = HeckeRow::d3_surrogate(50);
    CHECK(std::abs(hecke_expand(2, 2, row) - cplx(8)) < 1e-12);
    CHECK(std::abs(hecke_expand(2, 3, row) - cplx(9)) < 1e-12);
    for (i64 n = 1; n <= 50; ++n) CHECK(std::abs(hecke_expand(1, n, row) - cplx(double(d3(n)))) < 1e-12);
    CHECK_THROWS_AS(hecke_expand(2, 60, row), MissingCoefficient);
}

TEST_CASE("rs_partial_sum_check") {
    RsConfig cfg;
    cfg.ceiling = 20;
    cfg.log_power = 3;
    auto dt = coeffs::divisor_surrogate(10000, 0);
    auto rep = rs_partial_sum_check(dt, 10000, cfg);
    CHECK_FALSE(rep.violation);
    REQUIRE(rep.sweep.size() >= 2);
    // sum d(n)^2 / N grows with N
    CHECK(rep.sweep.back().ratio > rep.sweep.front().ratio);

    auto z = rs_partial_sum_check(coeffs::zero_table(1000), 1000);
    for (const auto& pt : z.sweep) CHECK(pt.ratio == 0);

    RsConfig c3;
    c3.ceiling = 20;
    c3.log_power = 2;
    CHECK_FALSE(rs_partial_sum_check(coeffs::d3_surrogate(20000), 10000, c3).violation);

    CHECK_THROWS_AS(rs_partial_sum_check(coeffs::divisor_surrogate(100, 0), 1000), InsufficientData);

    RsConfig tight = cfg;
    tight.ceiling = 1e-3;
    CHECK(rs_partial_sum_check(dt, 10000, tight).violation);
}
