#include <doctest.h>

#include <cmath>

#include "subconvex/errors.hpp"
#include "subconvex/oscint.hpp"

using namespace subconvex;
using namespace subconvex::oscint;

namespace {

PhaseModel zero_phase() {
    return PhaseModel([](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
                      PhaseUnit::Radians);
}

PhaseModel linear(double R) {
    return PhaseModel([R](double x) { return R * x; }, [R](double) { return R; }, [](double) { return 0.0; },
                      PhaseUnit::Radians, R, 1, R);
}

// Y (x^2/2 - x) in radians, critical point at 1
PhaseModel quad(double Y) {
    return PhaseModel([Y](double x) { return Y * (0.5 * x * x - x); }, [Y](double x) { return Y * (x - 1); },
                      [Y](double) { return Y; }, PhaseUnit::Radians, Y, 1, 1);
}

double bump_mass(const InertWeight& w) {
    double s = 0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) s += w.w(w.alpha + (w.beta - w.alpha) * (i + 0.5) / n);
    return s * (w.beta - w.alpha) / n;
}

}  // namespace

TEST_CASE("zero phase integrates the weight") {
    auto w = bump(1, 2);
    auto r = integrate_oscillatory(w, zero_phase(), 1e-12);
    CHECK(r.value.real() == doctest::Approx(bump_mass(w)).epsilon(1e-9));
    CHECK(std::abs(r.value.imag()) < 1e-15);
}

TEST_CASE("linear phase decays") {
    auto w = bump(1, 2);
    const double a = std::abs(integrate_oscillatory(w, linear(50), 1e-12).value);
    const double b = std::abs(integrate_oscillatory(w, linear(200), 1e-12).value);
    CHECK(a < bump_mass(w));
    CHECK(b < a / 16);  // at least A = 2
}

TEST_CASE("Fresnel limit") {
    const cplx want = std::polar(1.0 / std::sqrt(2.0), kPi / 4);  // e(1/8)/sqrt 2
    PhaseModel h([](double x) { return x * x; }, [](double x) { return 2 * x; }, [](double) { return 2.0; },
                 PhaseUnit::Cycles, 1, 1, 1);
    double prev = 1e9;
    for (double L : {2.0, 4.0, 8.0}) {
        auto r = integrate_oscillatory(plateau(-L, L, 1), h, 1e-10);
        const double err = std::abs(r.value - want);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("nonstationary decay report") {
    auto w = bump(1, 2);
    auto lin = nonstationary_decay_check(w, [](double R) { return linear(R); }, 2);
    CHECK(lin.pass);
    CHECK(lin.fitted_exponent >= 1.8);
    auto logf = [](double R) {
        return PhaseModel([R](double x) { return R * std::log(x); }, [R](double x) { return R / x; },
                          [R](double x) { return -R / (x * x); }, PhaseUnit::Radians, R, 1, R / 2);
    };
    auto lg = nonstationary_decay_check(w, logf, 2);
    CHECK(lg.pass);
    CHECK(lg.fitted_exponent >= 1.8);
    auto st = nonstationary_decay_check(bump(0.5, 1.5), [](double R) { return quad(R); }, 2);
    CHECK(st.critical_point);
    CHECK_FALSE(st.pass);
    // R declared above the actual |h'|
    auto bad = [](double R) { return linear(R).with_scales(R, 1, 2 * R); };
    CHECK_THROWS_AS(nonstationary_decay_check(w, bad, 2), MisdeclaredScales);
    CHECK_THROWS_AS(nonstationary_decay_check(w, logf, 2, {100}), InvalidArgs);
}

TEST_CASE("stationary phase leading term") {
    auto w = bump(0.5, 1.5);
    auto h = quad(1e3);
    auto s = stationary_phase_leading(w, h);
    CHECK(s.t0 == doctest::Approx(1).epsilon(1e-12));
    const cplx want = w.w(1) * std::sqrt(kTwoPi / 1e3) * std::polar(1.0, kPi / 4 - 500);
    CHECK(std::abs(s.value - want) < 1e-12);
    auto q = integrate_oscillatory(w, h, 1e-12);
    CHECK(std::abs(q.value / s.value - 1.0) <= 0.05);

    // symmetric phase around the symmetric bump: only the e^{i pi/4} factor survives
    PhaseModel sym([](double x) { return 500 * (x - 1) * (x - 1); }, [](double x) { return 1000 * (x - 1); },
                   [](double) { return 1000.0; }, PhaseUnit::Radians, 1e3, 1, 1);
    const cplx lead = stationary_phase_leading(w, sym).value * std::polar(1.0, -kPi / 4);
    CHECK(std::abs(lead.imag()) < 1e-15);
    CHECK(lead.real() > 0);
    // the quadrature only matches that phase up to O(1/Y)
    auto v = integrate_oscillatory(w, sym, 1e-12).value * std::polar(1.0, -kPi / 4);
    CHECK(std::abs(v.imag()) < 10.0 / 1e3 * std::abs(v));

    double prev = 1e9;
    for (double Y : {1e2, 1e3, 1e4}) {
        auto hy = quad(Y);
        const double dev = std::abs(integrate_oscillatory(w, hy, 1e-12).value / stationary_phase_leading(w, hy).value - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
}

TEST_CASE("stationary phase shift invariance") {
    auto w = bump(0.5, 1.5);
    auto h = quad(300);
    auto a = stationary_phase_leading(w, h), b = stationary_phase_leading(w, h.shifted(0.7));
    CHECK(std::abs(b.value - a.value * std::polar(1.0, 0.7)) < 1e-12);
}

TEST_CASE("stationary phase errors") {
    CHECK_THROWS_AS(stationary_phase_leading(bump(2, 3), quad(100)), NoCriticalPoint);
    // h' changes sign at 1 but h''(1) = 0
    PhaseModel cubic([](double x) { return std::pow(x - 1, 3); },
                     [](double x) { return 3 * (x - 1) * std::abs(x - 1); }, [](double x) { return 6 * std::abs(x - 1); },
                     PhaseUnit::Radians, 1, 1, 1);
    CHECK_THROWS_AS(stationary_phase_leading(bump(0.5, 1.5), cubic), DegenerateSecondDerivative);
}

TEST_CASE("critical point search") {
    auto h = quad(10);
    CHECK(find_critical_point(h, 0, 3) == doctest::Approx(1).epsilon(1e-12));
    CHECK_THROWS_AS(find_critical_point(h, 2, 3), NoCriticalPoint);
}

TEST_CASE("phase consistency check") {
    auto good = quad(10);
    CHECK_NOTHROW(good.check_consistency(0, 2));
    PhaseModel bad([](double x) { return x * x; }, [](double x) { return x; }, [](double) { return 2.0; },
                   PhaseUnit::Radians);
    CHECK_THROWS_AS(bad.check_consistency(0.5, 2), InvalidArgs);
    CHECK_THROWS_AS(PhaseModel(nullptr, nullptr, nullptr, PhaseUnit::Cycles), InvalidArgs);
}

TEST_CASE("Poisson summation") {
    auto a = poisson_verify(gaussian(1), 0, 1);
    CHECK(a.discrepancy <= 1e-10);
    auto b = poisson_verify(gaussian(10), 2, 5);
    CHECK(b.discrepancy <= 1e-8);
    // fhat of a wide Gaussian is narrow, so the n = 0 term carries the dual side
    auto c = poisson_verify(gaussian(20), 0, 1);
    CHECK(c.dominant_fraction > 0.999);
    CHECK_THROWS_AS(poisson_verify(gaussian(1), 0, 0), InvalidArgs);
    CHECK_THROWS_AS(poisson_verify(gaussian(1000), 0, 1, 50), TruncationFailure);
}

TEST_CASE("halving the tolerance stays within the error estimate") {
    auto w = bump(1, 2);
    for (double Y : {30.0, 300.0}) {
        auto h = quad(Y).shifted(0.3);
        auto a = integrate_oscillatory(w, h, 1e-8), b = integrate_oscillatory(w, h, 5e-9);
        CHECK(std::abs(a.value - b.value) <= std::max(a.err, 1e-15));
    }
}

TEST_CASE("no critical point: magnitude under the A = 1 bound") {
    auto w = bump(1, 2);
    for (double R : {10.0, 100.0, 1000.0}) {
        for (const auto& h : {linear(R), PhaseModel([R](double x) { return R * std::log(x); },
                                                    [R](double x) { return R / x; },
                                                    [R](double x) { return -R / (x * x); }, PhaseUnit::Radians,
                                                    R, 1, R / 2)}) {
            const double bound = 10 * (w.beta - w.alpha) * w.X *
                                 (std::pow(h.Q() * h.R() / std::sqrt(h.Y()), -1) + std::pow(h.R() * w.V, -1));
            CHECK(std::abs(integrate_oscillatory(w, h, 1e-12).value) <= bound);
        }
    }
}
