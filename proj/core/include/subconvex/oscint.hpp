#pragma once

#include <functional>
#include <string>
#include <vector>

#include "subconvex/numeric.hpp"

namespace subconvex::oscint {

enum class PhaseUnit { Cycles, Radians };

// Smooth phase with derivatives. Scales are in the units of h.
class PhaseModel {
public:
    using Fn = std::function<double(double)>;

    PhaseModel(Fn h, Fn dh, Fn d2h, PhaseUnit unit, double Y = 1, double Q = 1, double R = 1);

    double h(double x) const { return h_(x); }
    double dh(double x) const { return dh_(x); }
    double d2h(double x) const { return d2h_(x); }
    PhaseUnit unit() const { return unit_; }
    double Y() const { return Y_; }
    double Q() const { return Q_; }
    double R() const { return R_; }

    // h converted to radians
    double radians(double v) const { return unit_ == PhaseUnit::Cycles ? kTwoPi * v : v; }
    cplx factor(double x) const { return std::polar(1.0, radians(h_(x))); }

    PhaseModel shifted(double c) const;  // h + c
    PhaseModel with_scales(double Y, double Q, double R) const;

    // Finite-difference check of dh, d2h against h on [a, b]; throws InvalidArgs.
    void check_consistency(double a, double b, int samples = 16, double rel = 1e-4) const;

private:
    Fn h_, dh_, d2h_;
    PhaseUnit unit_;
    double Y_, Q_, R_;
};

struct InertWeight {
    std::function<double(double)> w;
    double alpha = 0, beta = 1;
    double X = 1, V = 1;
};

// exp(-1/(1-t^2)) on (alpha, beta), scaled so the maximum is `height`.
InertWeight bump(double alpha, double beta, double height = 1.0);
// Equal to `height` on [a, b], smooth ramps of width `ramp` on each side.
InertWeight plateau(double a, double b, double ramp, double height = 1.0);

struct OscResult {
    cplx value;
    double err = 0;
};

OscResult integrate_oscillatory(const InertWeight& w, const PhaseModel& h, double tol);

struct DecayReport {
    std::vector<double> R, magnitude, bound;
    double fitted_exponent = 0;
    bool critical_point = false;
    bool pass = false;
    std::string note;
};

// family(R) gives the phase whose declared R scale is R.
DecayReport nonstationary_decay_check(const InertWeight& w,
                                      const std::function<PhaseModel(double)>& family, int A,
                                      const std::vector<double>& ladder = {1e2, 1e3, 1e4});

struct StationaryResult {
    cplx value;
    double t0 = 0;
    double h2 = 0;       // h''(t0) in radians
    double X1 = 0;
    double Y_prime = 0;  // |h''(t0)| X1^2
};

// Leading term w(t0) sqrt(2 pi / |h''(t0)|) e^{i h(t0) + i sgn(h'') pi/4}.
StationaryResult stationary_phase_leading(const InertWeight& w, const PhaseModel& h);

// Root of dh on [a, b]: 64-cell sign scan, then bisection/Newton.
double find_critical_point(const PhaseModel& h, double a, double b);

struct SchwartzSpec {
    std::function<cplx(double)> f;
    std::function<cplx(double)> fhat;  // int f(x) e(-x xi) dx
    double width = 1;                  // decay scale of f
    double center = 0;
};

// exp(-pi ((x - center)/width)^2)
SchwartzSpec gaussian(double width, double center = 0);

struct PoissonReport {
    cplx lhs, rhs;
    double discrepancy = 0;
    long long lhs_terms = 0, rhs_terms = 0;
    double dominant_fraction = 0;  // |largest rhs term| / |rhs|
};

PoissonReport poisson_verify(const SchwartzSpec& f, long long beta, long long c,
                             long long max_terms = 10000000);

}  // namespace subconvex::oscint
