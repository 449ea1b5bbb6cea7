#pragma once

#include <array>

#include "subconvex/numeric.hpp"

namespace subconvex::special {

struct SpectralParams {
    double t = 0;
    double t_f = 1;
    double T() const { return t + t_f; }
    double Tprime() const { return t - t_f; }
};

struct GammaFactorGL3 {
    std::array<cplx, 3> alphas{};
};

cplx log_gamma(cplx z);  // principal branch; PoleAt on 0, -1, -2, ...

// Stirling series for log Gamma with `terms` Bernoulli corrections; for |z| large.
cplx log_gamma_stirling(cplx z, int terms = 12);

struct StirlingRatio {
    cplx approx;  // exp(2it log(|t|/e)) times the order-J correction factor
    cplx exact;   // Gamma(sigma+it)/Gamma(sigma-it) via log_gamma
    cplx correction;
};

StirlingRatio stirling_ratio(double sigma, double t, int J);  // OutOfDomain for |t| < 10

struct Gamma2Terms {
    cplx first;   // quotient with 1/2
    cplx second;  // quotient with 3/2
    cplx value;   // first + sign1 * second
};

// gamma_2^{sign1}(-1/2 + i tau - i t) as a function of tau.
Gamma2Terms gamma2_terms(double tau, const SpectralParams& p, int sign1);
cplx gamma2_pm(double tau, const SpectralParams& p, int sign1);

// The same combination built from order-J Stirling approximants of each quotient.
cplx gamma2_pm_stirling(double tau, const SpectralParams& p, int sign1, int J = 3);

// GL2 gamma combination of the Mellin form of G^{sign1}, at s:
// G(1+s+it_f)G(1+s-it_f)/(G(-s+it_f)G(-s-it_f)) -/+ G(2+s..)G(2+s..)/(G(1-s..)G(1-s..)),
// every Gamma argument halved.
cplx gamma_gl2_mellin(cplx s, double t_f, int sign1);

cplx gamma3_pm(cplx s, const GammaFactorGL3& g, int sign);
cplx gamma3_first(cplx s, const GammaFactorGL3& g);
cplx gamma3_second(cplx s, const GammaFactorGL3& g);

// value * exp(log_scale)
struct LogScaled {
    cplx value;
    double log_scale = 0;
    cplx resolve() const;
};

// J_{2 i tau}(x). Ascending series where it is well conditioned, otherwise the
// oscillatory integral representation evaluated on a deformed contour.
cplx bessel_J_imag_order(double tau, double x);
// J_{2 i tau}(x) / cosh(pi tau), bounded for all tau
cplx bessel_J_imag_order_scaled(double tau, double x);
// Raw ascending series; reports the cancellation ratio max|term| / |sum|.
cplx bessel_J_series(double tau, double x, double* cancellation = nullptr);
// Large-argument form with e^{+-2i omega(x/2, tau)} and `terms` (0 or 1) corrections.
cplx bessel_J_asymptotic(double tau, double x, int terms = 1);

// K_{2 i tau}(x), real. Log-scaled variant for large tau.
double bessel_K_imag_order(double tau, double x);
LogScaled bessel_K_imag_order_logscaled(double tau, double x);
// K_{2 i tau}(x) cosh(pi tau)
double bessel_K_scaled(double tau, double x);

// The GL2 Voronoi kernels.
double kernel_J_plus(double t_f, double x);   // (-pi / sin(pi i t_f)) (J_{2it_f} - J_{-2it_f})
double kernel_J_minus(double t_f, double x);  // 4 cosh(pi t_f) K_{2it_f}

double omega_phase(double x, double tau);

}  // namespace subconvex::special
