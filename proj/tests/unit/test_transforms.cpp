#include <doctest.h>

#include <cmath>

#include "subconvex/errors.hpp"
#include "subconvex/transforms.hpp"

using namespace subconvex;
using namespace subconvex::transforms;

namespace {

TransformParams base_params() {
    TransformParams p;
    p.N = 1e5;
    p.P = 100;
    p.Q = 100;
    p.q = 150;
    p.spectral = {60, 140};  // T = 200, T' = -80
    return p;
}

}  // namespace

TEST_CASE("G transform: Mellin and Bessel forms agree") {
    GSpec g;
    g.N = 100;
    g.t = 3;
    g.t_f = 9;
    const double yc = 12.0 * 6.0 / (4 * kPi * kPi * g.N);
    for (double f : {0.5, 1.0, 2.0})
        for (int s1 : {1, -1}) {
            const cplx m = G_transform_mellin(yc * f, g, s1).value;
            const cplx b = G_transform_bessel(yc * f, g, s1).value;
            CHECK(std::abs(m - b) <= 1e-4 * (std::abs(m) + 1e-6));
        }
}

TEST_CASE("G transform is even in t_f") {
    GSpec g;
    g.N = 100;
    g.t = 0;
    g.t_f = 5;
    // both Voronoi kernels are even in t_f
    const double y = 0.02;
    const cplx a = G_transform_bessel(y, g, 1).value;
    GSpec h = g;
    h.t_f = -5;
    const cplx b = G_transform_bessel(y, h, 1).value;
    CHECK(std::abs(a - b) <= 1e-6 * (1 + std::abs(a)));
}

TEST_CASE("GSpec weight") {
    GSpec g;
    g.N = 10;
    CHECK(std::abs(g.g(5)) == 0);
    CHECK(std::abs(g.g(25)) == 0);
    CHECK(std::abs(g.g(15)) == doctest::Approx(1));
}

TEST_CASE("regime classifier examples") {
    auto p = base_params();
    auto with_Y = [&](double Y) {
        TransformParams x = p;
        x.X = Y * p.P * p.Q / p.N;
        return classify_G_regime(x);
    };
    CHECK(with_Y(0.5) == RegimeTag::NONOSC);
    CHECK(with_Y(800) == RegimeTag::OSC_KERNEL_II);
    TransformParams q = p;
    const double T = 200, Tp = std::pow(T, 0.9);
    q.spectral = {(T + Tp) / 2, (T - Tp) / 2};
    q.X = std::sqrt(Tp) * p.P * p.Q / p.N;
    CHECK(classify_G_regime(q) == RegimeTag::OSC_KERNEL_III);
    CHECK(to_string(RegimeTag::OSC_KERNEL_II) == "OSC_KERNEL_II");
}

TEST_CASE("transform params validation") {
    TransformParams p;
    p.N = -1;
    CHECK_THROWS_AS(p.validate(), InvalidArgs);
}

TEST_CASE("xi star series examples") {
    SpectralParams sp{150, 50};  // T = 200, T' = 100
    const double yN = kTwoPi * 200 * 100;
    auto s = xi_star_series(2, sp, yN, 3, 1);
    CHECK(s.xi0 == doctest::Approx(1).epsilon(1e-14));
    CHECK(s.xi[1] == doctest::Approx(-0.01).epsilon(1e-12));
    CHECK(s.coeffs[0] == 3);
    CHECK(s.coeffs[1] == doctest::Approx(-0.5 * (0.01 + 0.02)).epsilon(1e-14));
    auto m = xi_star_series(2, sp, yN, 3, -1);
    CHECK(m.coeffs[1] == doctest::Approx(0.5 * (0.01 + 0.02)).epsilon(1e-14));
    CHECK(std::abs(s.series_root - s.numeric_root) <= 10 * std::pow(0.02, 4));
    CHECK_THROWS_AS(xi_star_series(25, sp, yN, 3, 1), SeriesDivergence);
}

TEST_CASE("xi star series converges faster with more terms") {
    SpectralParams sp{60, 140};
    const double yN = kTwoPi * 200 * 80;
    for (double r : {0.02, 0.05, 0.1}) {
        const double B = r * 80;
        auto a = xi_star_series(B, sp, yN, 3, 1), b = xi_star_series(B, sp, yN, 6, 1);
        const double e3 = std::abs(a.series_root - a.numeric_root);
        const double e6 = std::abs(b.series_root - b.numeric_root);
        CHECK(e3 <= 10 * std::pow(r, 4));
        CHECK(e6 <= e3 * r * r + 1e-15);
        auto ph = phase_at_xistar(a, sp, yN);
        CHECK(std::abs(ph.expansion - ph.direct) <= 10 * std::pow(B, 5) / std::pow(80.0, 4));
    }
}

TEST_CASE("regime III kernel is a unit phase") {
    auto p = base_params();
    p.X = 1;
    KernelArgs k;
    k.q = 150;
    k.m = kTwoPi * 150 * 150 * 200 * 80 / p.N;
    k.n2 = 1.5 * p.N * p.N / std::pow(p.Q, 3);
    const cplx v = I_kernel(k, p, RegimeTag::OSC_KERNEL_III);
    CHECK(std::abs(std::abs(v) - 1) < 1e-12);
    CHECK_THROWS_AS(I_kernel(k, p, RegimeTag::NONOSC), WrongRegime);
}

TEST_CASE("regime II kernel and its amplitude are bounded") {
    auto p = base_params();
    p.X = 7;
    KernelArgs k;
    k.q = 150;
    k.m = kTwoPi * 150 * 150 * 200 * 80 / p.N;
    k.n2 = 1.5 * p.N * p.N * std::pow(p.X, 3) / std::pow(p.Q, 3);
    CHECK(std::abs(I_kernel(k, p, RegimeTag::OSC_KERNEL_II)) <= 2 * std::pow(200.0, 0.05));
    for (double tau : {20.0, 70.0, 140.0}) CHECK(std::abs(w_pm1(tau, p.spectral, 1, 1, -1, 1)) <= 2);
    CHECK(W1_standin(1, 1, 1) >= 0);
}

TEST_CASE("frak I is bounded by N2") {
    auto p = base_params();
    p.X = 1;
    FrakIArgs f;
    f.q2 = 150;
    f.q2p = 150;
    f.m = kTwoPi * 150 * 150 * 200 * 80 / p.N;
    f.mp = f.m;
    const double N2 = frak_N2(f, p);
    CHECK(N2 == doctest::Approx(p.N * p.N / std::pow(p.Q, 3)));
    CHECK(frak_modulus(f) == 150 * 150);
    CHECK(frak_n_cutoff(f, p) == doctest::Approx(p.P * p.Q * p.Q / (p.N * p.X * p.X)));
    for (std::int64_t n : {0, 2}) CHECK(std::abs(frak_I(n, f, p, RegimeTag::OSC_KERNEL_III).value) <= N2 * (1 + 1e-10));
}

TEST_CASE("Psi in the non-oscillating range") {
    TransformParams p;
    p.N = 1000;
    p.Q = 10;
    p.q = 10;
    p.P = 10;
    p.spectral = {60, 140};
    p.x = 0.5 * p.q * p.Q / p.N;
    auto r = psi_transform(0.9 / p.N, p, 1);
    CHECK(r.tag == RegimeTag::NONOSC);
    CHECK(std::abs(r.value) <= 10 * std::pow(200.0, 0.05));
    CHECK(classify_psi_regime(0.9 / p.N, p, 1) == RegimeTag::NONOSC);
}

TEST_CASE("unit mass and unit height weights") {
    double s = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) s += weight_unit_mass(1 + (i + 0.5) / n);
    CHECK(s / n == doctest::Approx(1).epsilon(1e-6));
    CHECK(weight_unit_height(1.5) == doctest::Approx(1));
    CHECK(weight_unit_mass(0.9) == 0);
}
