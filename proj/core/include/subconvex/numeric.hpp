#pragma once

#include <complex>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "subconvex/errors.hpp"

namespace subconvex {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// e(x) = exp(2 pi i x)
inline cplx e_of(double x) { return std::polar(1.0, kTwoPi * x); }

// Compensated (Neumaier) summation for complex terms.
class KahanSum {
public:
    void add(cplx v) {
        re_.add(v.real());
        im_.add(v.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    struct Part {
        double s = 0, c = 0;
        void add(double x) {
            double t = s + x;
            if (std::abs(s) >= std::abs(x))
                c += (s - t) + x;
            else
                c += (x - t) + s;
            s = t;
        }
        double value() const { return s + c; }
    };
    Part re_, im_;
};

template <class T>
struct QuadResult {
    T value{};
    double err = 0;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b]; a or b may be infinite.
// Accepts when err <= max(abs_tol, rel_tol * L1); otherwise QuadratureFailure.
template <class F>
auto integrate_gk(F&& f, double a, double b, double abs_tol, double rel_tol = 1e-10,
                  unsigned max_depth = 18) {
    using R = decltype(f(0.0));
    double err = 0, l1 = 0;
    R v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, rel_tol, &err, &l1);
    double bound = std::max(abs_tol, rel_tol * l1);
    if (!(err <= bound))
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "error estimate %.3g exceeds %.3g on [%.6g, %.6g]", err,
                      bound, a, b);
        throw QuadratureFailure(buf);
    }
    return QuadResult<R>{v, err};
}

// Same, but returns the estimate instead of throwing.
template <class F>
auto integrate_gk_nothrow(F&& f, double a, double b, double rel_tol = 1e-10,
                          unsigned max_depth = 18) {
    using R = decltype(f(0.0));
    double err = 0, l1 = 0;
    R v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, max_depth, rel_tol, &err, &l1);
    return QuadResult<R>{v, err};
}

// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
// processed exactly once; callers write to disjoint slots.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace subconvex
