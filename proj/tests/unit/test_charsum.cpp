#include <doctest.h>

#include <cmath>
#include <numeric>

#include "subconvex/arith.hpp"
#include "subconvex/charsum.hpp"
#include "subconvex/errors.hpp"

using namespace subconvex;
using namespace subconvex::charsum;

namespace {

i64 md(i64 a, i64 q) { return ((a % q) + q) % q; }

cplx ev(i64 num, i64 den) { return std::polar(1.0, kTwoPi * double(md(num, den)) / double(den)); }

i64 inv(i64 a, i64 q) {
    for (i64 x = 0; x < q; ++x)
        if (md(a * x, q) == 1 % q) return x;
    return -1;
}

cplx kl(i64 a, i64 b, i64 c) {
    cplx s = 0;
    for (i64 d = 0; d < c; ++d)
        if (std::gcd(d, c) == 1) s += ev(a * d + b * inv(d, c), c);
    return s;
}

// the definition, with every inverse found by search
cplx C_brute(const CharSumArgs& a) {
    const i64 c = a.r * a.q / a.n1;
    cplx s = 0;
    for (i64 x = 0; x < a.q; ++x) {
        if (std::gcd(x, a.q) != 1) continue;
        const i64 xb = inv(x, a.q);
        s += ev(a.sign1 * xb * a.m, a.q) * kl(-a.r * xb, a.sign * a.n2, c);
    }
    return s;
}

}  // namespace

TEST_CASE("C trivial and brute force values") {
    CHECK(std::abs(char_sum_C_oracle({1, 1, 1, 1, 1, 1, 1}) - cplx(1)) < 1e-12);
    CHECK(std::abs(char_sum_C_reduced({1, 1, 1, 1, 1, 1, 1}) - cplx(1)) < 1e-12);
    CharSumArgs q2{1, 1, 1, 1, 2, 1, 1};
    CHECK(std::abs(char_sum_C_oracle(q2) - C_brute(q2)) < 1e-12);
    CharSumArgs q6{3, 1, 1, 2, 6, 1, 1};
    CHECK(std::abs(char_sum_C_oracle(q6) - char_sum_C_reduced(q6)) < 1e-10);
    CHECK(std::abs(char_sum_C_oracle(q6) - C_brute(q6)) < 1e-10);
}

TEST_CASE("C oracle and reduced form agree with the definition") {
    for (i64 q = 1; q <= 12; ++q)
        for (i64 r = 1; r <= 3; ++r)
            for (i64 n1 = 1; n1 <= q * r; ++n1) {
                if ((q * r) % n1) continue;
                for (i64 n2 : {1, 2, 5})
                    for (i64 m : {1, 3})
                        for (int s : {1, -1})
                            for (int s1 : {1, -1}) {
                                CharSumArgs a{n2, n1, r, m, q, s, s1};
                                const cplx b = C_brute(a);
                                CHECK(std::abs(char_sum_C_oracle(a) - b) < 1e-9);
                                CHECK(std::abs(char_sum_C_reduced(a) - b) < 1e-9);
                            }
            }
}

TEST_CASE("C prime modulus dividing m") {
    for (i64 p : {3, 5, 7})
        for (int s1 : {1, -1}) {
            CharSumArgs a{2, 1, 2, p, p, 1, s1};
            CHECK(std::abs(char_sum_C_reduced(a) - char_sum_C_oracle(a)) < 1e-9);
        }
}

TEST_CASE("C rejects n1 not dividing qr") {
    CHECK_THROWS_AS(char_sum_C_oracle({1, 5, 1, 1, 3, 1, 1}), InvalidArgs);
    CHECK_THROWS_AS(char_sum_C_reduced({1, 5, 1, 1, 3, 1, 1}), InvalidArgs);
    CHECK_THROWS_AS(char_sum_C_oracle({1, 1, 1, 1, 3, 2, 1}), InvalidArgs);
}

TEST_CASE("C period vector matches pointwise values") {
    auto per = char_sum_C_period(2, 2, 3, 6, 1, -1);
    REQUIRE(per.size() == 6);
    for (i64 b = 0; b < 6; ++b) CHECK(std::abs(per[b] - char_sum_C_oracle({b, 2, 2, 3, 6, 1, -1})) < 1e-9);
}

TEST_CASE("reduction sweep") {
    auto rep = run_reduction_sweep(10, 2, 4, 1e-8, 2);
    CHECK(rep.cases > 0);
    CHECK(rep.failures.empty());
    CHECK(rep.max_abs_diff < 1e-8);
}

TEST_CASE("frak_C examples") {
    FrakCArgs one;
    CHECK(std::abs(frak_C(one) - cplx(1)) < 1e-12);
    CHECK(frak_modulus(one) == 1);

    FrakCArgs diag{0, 1, 5, 5, 2, 2, 1, 1, 1, 1};
    const cplx d = frak_C(diag);
    CHECK(d.real() > 0);
    CHECK(std::abs(d.imag()) < 1e-9);

    FrakCArgs off{0, 1, 5, 7, 2, 3, 1, 1, 1, 1};
    CHECK(std::abs(frak_C(off)) < 1e-8);
    CHECK(std::abs(frak_C_direct(off)) < 1e-8);
}

TEST_CASE("frak_C period form against direct") {
    for (i64 n : {-3, 0, 1, 4})
        for (auto a : {FrakCArgs{n, 2, 3, 3, 1, 2, 2, 1, 1, 1}, FrakCArgs{n, 1, 3, 5, 2, 2, 1, 2, -1, -1},
                       FrakCArgs{n, 2, 1, 3, 1, 1, 1, 2, 1, -1}}) {
            a.n = n;
            CHECK(std::abs(frak_C(a) - frak_C_direct(a)) < 1e-9);
        }
}

TEST_CASE("frak_C spectrum shares periods") {
    FrakCArgs a{0, 1, 3, 5, 2, 1, 1, 1, 1, 1};
    std::vector<i64> ns{-2, -1, 0, 1, 2, 15};
    auto sp = frak_C_spectrum(a, ns);
    for (std::size_t i = 0; i < ns.size(); ++i) {
        a.n = ns[i];
        CHECK(std::abs(sp[i] - frak_C_direct(a)) < 1e-9);
    }
}

TEST_CASE("lemma majorant") {
    FrakCArgs one{1};
    CHECK(lemma_c_bound(one) >= std::abs(frak_C(one)));

}

TEST_CASE("lemma majorant at n = 0 and the delta factor") {
    // n = 0, q = q', m = m': sum over d, d' | q of (d, d') q r
    FrakCArgs z{0, 1, 15, 15, 4, 4, 1, 1, 1, 1};
    double want = 0;
    for (i64 d : arith::divisors(15))
        for (i64 dp : arith::divisors(15)) want += double(std::gcd(d, dp) * 15);
    CHECK(std::abs(lemma_c_bound(z) - want) < 1e-9);
    CHECK(std::abs(frak_C(z)) <= lemma_c_bound(z) * (1 + 1e-6));

    // (q2, q2') = 5 does not divide n = 2
    FrakCArgs off{2, 1, 5, 5 * 3, 1, 2, 1, 1, 1, 1};
    CHECK(lemma_c_bound(off) == 0);
    CHECK(std::abs(frak_C(off)) < 1e-8);
}

TEST_CASE("frak sweep on a small range") {
    SweepConfig cfg;
    cfg.max_modulus = 60;
    cfg.max_r = 2;
    cfg.max_n1 = 2;
    cfg.m_max = 2;
    cfg.n_range = 3;
    cfg.workers = 2;
    auto rep = run_frak_sweep(cfg);
    CHECK(rep.configurations > 0);
    CHECK(rep.failures.empty());
    CHECK(rep.worst_ratio <= 1 + 1e-6);
    CHECK(rep.worst_zero < 1e-6);
}

TEST_CASE("frak_C validation") {
    CHECK_THROWS_AS(validate(FrakCArgs{0, 1, 2, 1, 1, 1, 1, 2, 1, 1}), InvalidArgs);  // gcd(q2, n1 r) = 2
    CHECK_THROWS_AS(validate(FrakCArgs{0, 1, 1, 1, 1, 1, 2, 1, 1, 1}), InvalidArgs);  // n1 does not divide q1
    CHECK_THROWS_AS(frak_C(FrakCArgs{0, 1, 1, 1, 0, 1, 1, 1, 1, 1}), InvalidArgs);
}
