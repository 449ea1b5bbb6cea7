#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "subconvex/coeffs.hpp"
#include "subconvex/errors.hpp"

using namespace subconvex;
using namespace subconvex::coeffs;

namespace {

// a multiplicative table in the Maass file format
CoefficientTable fake_maass(i64 n_max) {
    auto t = divisor_surrogate(n_max, 4.5);
    t.kind = CoeffKind::GL2_MAASS;
    t.t_f = 4.5;
    t.eps_f = -1;
    return t;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("file round trip") {
    auto t = fake_maass(200);
    const std::string path = temp_path("subconvex_roundtrip.txt");
    write_coefficients(t, path);
    auto u = load_coefficients(path);
    std::remove(path.c_str());
    CHECK(u.kind == CoeffKind::GL2_MAASS);
    CHECK(u.t_f == t.t_f);
    CHECK(u.eps_f == -1);
    REQUIRE(u.n_max() == t.n_max());
    for (i64 n = 1; n <= t.n_max(); ++n) CHECK(u.at(n) == t.at(n));
    CHECK(format_coefficients(u) == format_coefficients(t));
}

TEST_CASE("header and row parsing") {
    auto ok = parse_coefficients("# gl2-maass t_f=9.5336952613 eps_f=+1\n1,1,0\n2,0.5,0\n");
    CHECK(ok.n_max() == 2);
    CHECK(ok.t_f == doctest::Approx(9.5336952613));
    CHECK(ok.eps_f == 1);
    CHECK_THROWS_AS(parse_coefficients(""), ParseError);
    CHECK_THROWS_AS(parse_coefficients("# gl2 t_f=1 eps_f=1\n1,1,0\n"), ParseError);
    CHECK_THROWS_AS(parse_coefficients("# gl2-maass t_f=1 eps_f=+1\n1,1\n"), ParseError);
    CHECK_THROWS_AS(parse_coefficients("# gl2-maass t_f=1 eps_f=+1\n2,1,0\n"), ParseError);
    CHECK_THROWS_AS(parse_coefficients("# gl2-maass t_f=1 eps_f=+1\n1,x,0\n"), ParseError);
    CHECK_THROWS_AS(parse_coefficients("# gl2-maass t_f=1 eps_f=+1\n"), ParseError);
    CHECK_THROWS_AS(parse_coefficients("# gl2-maass t_f=1 eps_f=+1\n1,1,0\n", "gl3"), ParseError);
    CHECK_THROWS_AS(load_coefficients(temp_path("subconvex_missing_file.txt")), ParseError);
}

TEST_CASE("corrupted coefficient is rejected with its pair") {
    auto t = fake_maass(100);
    t.values[5] += 0.5;  // lambda(6)
    try {
        parse_coefficients(format_coefficients(t));
        FAIL("no ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.m() == 2);
        CHECK(e.n() == 3);
    }
    auto bad1 = fake_maass(10);
    bad1.values[0] = 2;
    CHECK_THROWS_AS(parse_coefficients(format_coefficients(bad1)), ValidationError);
}

TEST_CASE("surrogates") {
    auto d = divisor_surrogate(30, 0);
    CHECK(d.kind == CoeffKind::GL2_DIVISOR_SURROGATE);
    CHECK(d.at(12) == cplx(6));
    CHECK_NOTHROW(validate_multiplicative(d, 30));
    auto d3 = d3_surrogate(30);
    CHECK(d3.kind == CoeffKind::GL3_D3_SURROGATE);
    CHECK(d3.at(4) == cplx(6));
    CHECK_THROWS_AS(d3.at(31), InsufficientData);
    CHECK(zero_table(5).at(3) == cplx(0));
    CHECK(to_string(CoeffKind::GL2_MAASS) == "GL2_MAASS");
}

TEST_CASE("Voronoi check guards") {
    transforms::GSpec g;
    g.N = 50;
    g.t = 2;
    g.beta = 1;
    CHECK_THROWS_AS(verify_gl2_voronoi(divisor_surrogate(500, 1), 0, 1, g, 100), NotCuspidal);
    CHECK_THROWS_AS(verify_gl2_voronoi(d3_surrogate(500), 0, 1, g, 100), NotCuspidal);
    auto z = verify_gl2_voronoi(zero_table(10), 1, 3, g, 100);
    CHECK(z.status == "PASS");
    CHECK(std::abs(z.lhs) == 0);
    CHECK_THROWS_AS(verify_gl2_voronoi(fake_maass(60), 1, 3, g, 1000), InsufficientData);
    CHECK_THROWS_AS(verify_gl2_voronoi(zero_table(10), 1, 0, g, 100), InvalidArgs);
    CHECK(voronoi_dual_length(1, g) > 0);
    CHECK(voronoi_dual_length(3, g) >= 8 * voronoi_dual_length(1, g));
}
