#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "subconvex/errors.hpp"
#include "subconvex/ledger.hpp"

using namespace subconvex;
using namespace subconvex::ledger;

namespace {

Rational Rt(long long n, long long d = 1) { return Rational(n, d); }

const Term& find(const TermLedger& L, const std::string& label) {
    auto it = std::find_if(L.terms.begin(), L.terms.end(), [&](const Term& t) { return t.label == label; });
    REQUIRE(it != L.terms.end());
    return *it;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/5") == Rt(3, 5));
    CHECK(parse_rational("-2/7") == Rt(-2, 7));
    CHECK(parse_rational("1") == Rt(1));
    CHECK(to_string(Rt(27, 20)) == "27/20");
    CHECK(to_string(Rt(4, 2)) == "2");
    CHECK_THROWS_AS(parse_rational("0.6"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
}

TEST_CASE("exponent vectors") {
    ExponentVector v{{"T", Rt(1)}, {"K", Rt(3, 2)}};
    CHECK(v.get("T") == Rt(1));
    CHECK(v.get("r") == Rt(0));
    ExponentVector w{{"T", Rt(-1)}};
    CHECK((v + w).exponents().count("T") == 0);
    CHECK((v - v) == ExponentVector{});
    CHECK_THROWS_AS(ExponentVector({{"X", Rt(1)}}), InvalidArgs);
    CHECK(ExponentVector{}.describe() == "1");
}

TEST_CASE("ledger contents") {
    auto L = build_ledger();
    CHECK(L.terms.size() == 5);
    CHECK(find(L, "r^{1/2}K^{3/2}T/|T'|").exps ==
          ExponentVector{{"T", Rt(1)}, {"Tp", Rt(-1)}, {"K", Rt(3, 2)}, {"r", Rt(1, 2)}});
    CHECK(find(L, "T^{7/8}|T'|^{7/8}/K^{1/2}").exps ==
          ExponentVector{{"T", Rt(7, 8)}, {"Tp", Rt(7, 8)}, {"K", Rt(-1, 2)}});
    CHECK(build_collected_ledger().terms.size() == 12);
    CHECK(build_raw_ledger().terms.size() == 16);
}

TEST_CASE("evaluate_sup at the theorem's choices") {
    auto L = build_ledger();
    CHECK(evaluate_sup(L, Rt(1), {Rt(4, 5), Rt(0)}) == Rt(27, 20));
    CHECK(evaluate_sup(L, Rt(3, 5), {Rt(8, 7), Rt(-2, 7)}) == Rt(57, 56) + Rt(17, 56) * Rt(3, 5));
    const Rational a = Rt(5, 6);
    CHECK(Rt(7, 8) + Rt(19, 40) * a == Rt(57, 56) + Rt(17, 56) * a);
    CHECK(evaluate_sup(L, a, paper_K(a)) == theorem_exponent(a));
    // K floor at a = 1 is 46/80 < 64/80
    CHECK(K_floor(Rt(1)) == Rt(46, 80));
    CHECK(K_floor(Rt(1)) < Rt(4, 5));
    CHECK(R_exponent(Rt(1)) == Rt(7, 30));
}

TEST_CASE("evaluate_sup ignores term order") {
    auto L = build_ledger();
    const Rational want = evaluate_sup(L, Rt(9, 10), paper_K(Rt(9, 10)));
    std::mt19937 rng(7);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(L.terms.begin(), L.terms.end(), rng);
        CHECK(evaluate_sup(L, Rt(9, 10), paper_K(Rt(9, 10))) == want);
    }
}

TEST_CASE("evaluate_sup constraints") {
    auto L = build_ledger();
    CHECK_THROWS_AS(evaluate_sup(L, Rt(1), {Rt(2), Rt(0)}), ConstraintViolated);
    CHECK_THROWS_AS(evaluate_sup(L, Rt(1), {Rt(0), Rt(0)}), ConstraintViolated);
    CHECK_THROWS_AS(evaluate_sup(L, Rt(1, 2), {Rt(4, 5), Rt(0)}), RegimeViolation);
    CHECK_THROWS_AS(evaluate_sup(TermLedger{}, Rt(1), {Rt(4, 5), Rt(0)}), InvalidArgs);
}

TEST_CASE("optimize_K") {
    auto L = build_ledger();
    auto one = optimize_K(L, Rt(1));
    CHECK(one.sup == Rt(27, 20));
    CHECK(one.paper_match);
    auto low = optimize_K(L, Rt(3, 5));
    CHECK(low.sup <= Rt(6, 5));
    CHECK(low.paper_match);
    for (auto a : {Rt(9, 10), Rt(5, 6), Rt(7, 10)}) {
        auto r = optimize_K(L, a);
        CHECK(r.sup <= r.paper_sup);
        CHECK(r.sup < convexity_exponent(a));
    }
    CHECK_THROWS_AS(optimize_K(L, Rt(1), 0), InvalidArgs);
}

TEST_CASE("raw terms are dominated") {
    auto canon = build_ledger();
    CHECK(check_domination(build_raw_ledger(), canon).undominated.empty());
    CHECK(check_domination(build_collected_ledger(), canon).undominated.empty());
    TermLedger big{{{"T^2", ExponentVector{{"T", Rt(2)}}, "test"}}};
    CHECK(check_domination(big, canon).undominated.size() == 1);
}

TEST_CASE("AFE cutoffs") {
    auto c = afe_cutoffs({0, 1000}, 1);
    CHECK(c.R_tp_exp == Rt(77, 180));
    CHECK(c.R_t_exp == Rt(-7, 36));
    CHECK(c.R == doctest::Approx(std::pow(1000.0, 7.0 / 30)));
    CHECK(c.N_max == doctest::Approx(1e9));
    CHECK(afe_cutoffs({0, 1000}, 2).N_max == doctest::Approx(1e9 / 4));
    CHECK_THROWS_AS(afe_cutoffs({95, 105}, 1), RegimeViolation);
    CHECK_THROWS_AS(afe_cutoffs({0, 1000}, 0), InvalidArgs);
}
