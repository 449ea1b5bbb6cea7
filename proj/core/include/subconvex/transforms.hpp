#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subconvex/numeric.hpp"
#include "subconvex/special.hpp"

namespace subconvex::transforms {

using special::SpectralParams;

enum class RegimeTag { NEGLIGIBLE, OSC_STATIONARY, OSC_KERNEL_II, OSC_KERNEL_III, NONOSC };
std::string to_string(RegimeTag t);

// Window constants for "a is of size b": c1 * b <= a <= c2 * b.
struct RegimeConstants {
    double eps = 0.05;
    double c1 = 0.25, c2 = 4.0;
};

struct TransformParams {
    double N = 1, X = 1, P = 1, Q = 1;
    double q = 1;
    std::int64_t r = 1;
    double x = 1;  // the delta-method variable, |x| of size X
    SpectralParams spectral;

    double oscillation() const { return N * X / (P * Q); }  // NX/PQ
    void validate() const;                                  // InvalidArgs
};

// Fixed weights on [1, 2]: a bump with integral 1 and a bump with maximum 1.
double weight_unit_mass(double u);
double weight_unit_height(double u);

struct PsiResult {
    cplx value;
    RegimeTag tag = RegimeTag::NEGLIGIBLE;
    double err = 0;
};

// Psi_x^{sign}(z) for psi_x(u) = e(-ux/qQ) V(u/N), V = weight_unit_mass, alpha = (0, 0, 0),
// from the line integral on Re s = 1/2.
PsiResult psi_transform(double z, const TransformParams& p, int sign, double tol = 1e-8,
                        const RegimeConstants& rc = {});
RegimeTag classify_psi_regime(double z, const TransformParams& p, int sign,
                              const RegimeConstants& rc = {});

// g(x) = e(sign * 3 B (x/N)^{1/3} + beta x/N) x^{-it} W(x/N) with W = weight_unit_height.
// B = 0 gives the non-oscillating weight e(x * xvar / qQ) with beta = N xvar / qQ.
struct GSpec {
    double N = 1;
    double t = 0;
    double B = 0;
    int sign = 1;
    double beta = 0;
    double t_f = 1;
    int eps_f = 1;

    cplx g(double x) const;
};

struct GResult {
    cplx value;
    double err = 0;
    double tau_lo = 0, tau_hi = 0;  // integration window actually used (Mellin form)
};

GResult G_transform_mellin(double y, const GSpec& g, int sign1, double tol = 1e-7);
GResult G_transform_bessel(double y, const GSpec& g, int sign1, double tol = 1e-9);

RegimeTag classify_G_regime(const TransformParams& p, const RegimeConstants& rc = {});

struct PhaseSeries {
    double B = 0;
    double xi0 = 0;
    int L = 0;
    int sign = 1;
    double u = 0, v = 0;          // B/T and B/T' (signed)
    std::vector<double> xi;       // xi_0 .. xi_L
    std::vector<double> coeffs;   // Q_l(B/T, B/T') for l = 0..L
    double series_root = 0;       // sum of xi
    double numeric_root = 0;      // root of y N xi^3 = 2 pi T |T'| (1 -+ B xi/T)(1 -+ B xi/T')
};

// SeriesDivergence when B/|T'| >= 1/4.
PhaseSeries xi_star_series(double B, const SpectralParams& p, double yN, int L, int sign);

struct PhaseValue {
    double expansion = 0;  // main terms plus the Q_l sum (cycles)
    double direct = 0;     // h at the numeric root (cycles)
};

PhaseValue phase_at_xistar(const PhaseSeries& s, const SpectralParams& p, double yN);

// Amplitude stand-ins for the regime II kernel.
double W1_standin(double a, double b, double c);
cplx w_pm1(double tau, const SpectralParams& p, std::int64_t r, int sign, int sign1, int eps_f);

struct KernelArgs {
    double n2 = 1;
    std::int64_t n1 = 1, r = 1;
    double m = 1;
    double q = 1;
    int sign = 1;   // sign of the Kloosterman argument
    int sign1 = 1;  // sign of the GL2 Voronoi
    int eps_f = 1;
    int L = 3;
};

// Regime III: unit-modulus phase from the Q_l series. Regime II: tau-integral with the
// stand-ins above. WrongRegime otherwise.
cplx I_kernel(const KernelArgs& k, const TransformParams& p, RegimeTag regime);

struct FrakIArgs {
    std::int64_t n1 = 1, r = 1;
    std::int64_t q1 = 1, q2 = 1, q2p = 1;
    double m = 1, mp = 1;
    int sign = 1, sign1 = 1, eps_f = 1;
    int L = 3;
};

double frak_N2(const FrakIArgs& a, const TransformParams& p);          // r N^2 X^3 / (n1^2 Q^3)
double frak_modulus(const FrakIArgs& a);                               // r q1 q2 q2' / n1
double frak_n_cutoff(const FrakIArgs& a, const TransformParams& p);    // P Q^2 n1 / (q1 N X^2)

struct FrakIResult {
    cplx value;
    double err = 0;
};

// N2 int W(xi) I(N2 xi; m, q) conj(I(N2 xi; m', q')) e(-n N2 xi / modulus) dxi, W = weight_unit_height.
FrakIResult frak_I(std::int64_t n, const FrakIArgs& a, const TransformParams& p, RegimeTag regime,
                   double tol = 1e-10);

}  // namespace subconvex::transforms
