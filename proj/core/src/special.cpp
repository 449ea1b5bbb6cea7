#include "subconvex/special.hpp"

#include <cmath>
#include <string>

#include "subconvex/errors.hpp"

namespace subconvex::special {

namespace {

constexpr cplx I{0.0, 1.0};

// Lanczos, g = 7, n = 9
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

// B_{2k} / (2k (2k-1))
constexpr double kStirling[12] = {1.0 / 12,         -1.0 / 360,         1.0 / 1260,
                                  -1.0 / 1680,      1.0 / 1188,         -691.0 / 360360,
                                  1.0 / 156,        -3617.0 / 122400,   43867.0 / 244188,
                                  -174611.0 / 125400, 77683.0 / 5796,   -236364091.0 / 1506960};

const double kHalfLog2Pi = 0.5 * std::log(kTwoPi);

cplx lanczos(cplx z) {
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cplx t = z + kLanczosG + 0.5;
    return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

double log_cosh(double a) {
    a = std::abs(a);
    return a + std::log1p(std::exp(-2 * a)) - std::log(2.0);
}

}  // namespace

cplx LogScaled::resolve() const { return value * std::exp(log_scale); }

cplx log_gamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleAt("Gamma has a pole at " + std::to_string(z.real()));
    if (z.real() >= 0.5) return lanczos(z);
    int n = static_cast<int>(std::ceil(0.5 - z.real()));
    cplx shift = 0;
    for (int k = 0; k < n; ++k) shift += std::log(z + static_cast<double>(k));
    return lanczos(z + static_cast<double>(n)) - shift;
}

cplx log_gamma_stirling(cplx z, int terms) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
        throw PoleAt("Gamma has a pole at " + std::to_string(z.real()));
    terms = std::min(terms, 12);
    cplx shift = 0;
    while (std::abs(z) < 15.0 || z.real() < 0.5) {
        shift += std::log(z);
        z += 1.0;
    }
    cplx s = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
    cplx zinv = 1.0 / z, z2 = zinv * zinv, pw = zinv;
    for (int k = 0; k < terms; ++k) {
        s += kStirling[k] * pw;
        pw *= z2;
    }
    return s - shift;
}

StirlingRatio stirling_ratio(double sigma, double t, int J) {
    if (std::abs(t) < 10) throw OutOfDomain("stirling_ratio needs |t| >= 10");
    if (J < 1) throw InvalidArgs("J must be positive");
    const double at = std::abs(t);
    // phase correction for t > 0, conjugated afterwards for t < 0
    cplx L = 0, w = 1;
    for (int k = 1; k <= J + 1; ++k) {
        w *= I * sigma / at;
        L -= w / static_cast<double>(k);
    }
    double corr = (sigma - 0.5) * kPi / 2 + std::imag((sigma - 0.5 + I * at) * L);
    cplx z = cplx(sigma, at), zinv = 1.0 / z, pw = zinv;
    for (int k = 0; k < std::min(J, 12); ++k) {
        corr += kStirling[k] * std::imag(pw);
        pw *= zinv * zinv;
    }
    cplx main = std::polar(1.0, 2 * at * std::log(at / M_E));
    cplx c = std::polar(1.0, 2 * corr);
    if (t < 0) {
        main = std::conj(main);
        c = std::conj(c);
    }
    StirlingRatio r;
    r.approx = main * c;
    r.correction = c;
    r.exact = std::exp(log_gamma(cplx(sigma, t)) - log_gamma(cplx(sigma, -t)));
    return r;
}

Gamma2Terms gamma2_terms(double tau, const SpectralParams& p, int sign1) {
    const double T = p.T(), Tp = p.Tprime();
    auto quot = [&](double c) {
        cplx num = log_gamma((c + I * (tau - T)) / 2.0) + log_gamma((c + I * (tau - Tp)) / 2.0);
        cplx den = log_gamma((c - I * (tau - T)) / 2.0) + log_gamma((c - I * (tau - Tp)) / 2.0);
        // modulus is exactly one for real inputs; keep only the phase
        return std::polar(1.0, std::imag(num - den));
    };
    Gamma2Terms g;
    g.first = quot(0.5);
    g.second = quot(1.5);
    g.value = g.first + static_cast<double>(sign1) * g.second;
    return g;
}

cplx gamma2_pm(double tau, const SpectralParams& p, int sign1) {
    return gamma2_terms(tau, p, sign1).value;
}

cplx gamma2_pm_stirling(double tau, const SpectralParams& p, int sign1, int J) {
    const double u1 = (tau - p.T()) / 2, u2 = (tau - p.Tprime()) / 2;
    cplx first = stirling_ratio(0.25, u1, J).approx * stirling_ratio(0.25, u2, J).approx;
    cplx second = stirling_ratio(0.75, u1, J).approx * stirling_ratio(0.75, u2, J).approx;
    return first + static_cast<double>(sign1) * second;
}

cplx gamma_gl2_mellin(cplx s, double t_f, int sign1) {
    const cplx itf = I * t_f;
    cplx a = log_gamma((1.0 + s + itf) / 2.0) + log_gamma((1.0 + s - itf) / 2.0) -
             log_gamma((-s + itf) / 2.0) - log_gamma((-s - itf) / 2.0);
    cplx b = log_gamma((2.0 + s + itf) / 2.0) + log_gamma((2.0 + s - itf) / 2.0) -
             log_gamma((1.0 - s + itf) / 2.0) - log_gamma((1.0 - s - itf) / 2.0);
    return std::exp(a) - static_cast<double>(sign1) * std::exp(b);
}

cplx gamma3_first(cplx s, const GammaFactorGL3& g) {
    cplx l = 0;
    for (const cplx& a : g.alphas) l += log_gamma((s + a) / 2.0) - log_gamma((1.0 - s - a) / 2.0);
    return std::exp(l);
}

cplx gamma3_second(cplx s, const GammaFactorGL3& g) {
    cplx l = 0;
    for (const cplx& a : g.alphas) l += log_gamma((1.0 + s + a) / 2.0) - log_gamma((2.0 - s - a) / 2.0);
    return std::exp(l);
}

cplx gamma3_pm(cplx s, const GammaFactorGL3& g, int sign) {
    return gamma3_first(s, g) + static_cast<double>(sign) * gamma3_second(s, g) / I;
}

cplx bessel_J_series(double tau, double x, double* cancellation) {
    if (!(x > 0)) throw InvalidArgs("Bessel argument must be positive");
    const cplx nu = 2.0 * I * tau;
    const double h2 = 0.25 * x * x;
    cplx term = std::exp(nu * std::log(x / 2) - log_gamma(1.0 + nu));
    cplx sum = term;
    double biggest = std::abs(term);
    for (int k = 1; k < 100000; ++k) {
        term *= -h2 / (static_cast<double>(k) * (static_cast<double>(k) + nu));
        sum += term;
        biggest = std::max(biggest, std::abs(term));
        if (k > x && std::abs(term) < 1e-18 * biggest) {
            if (cancellation) *cancellation = biggest / std::abs(sum);
            return sum;
        }
    }
    throw ConvergenceFailure("J series did not converge");
}

namespace {

// C(x) = int_0^inf e^{i x cosh u} cos(2 tau u) du, along 0 -> U -> U + i pi/2 -> inf + i pi/2.
// U is placed where x sinh U = pi|tau| + 46, so the last leg is below e^{-46} and skipped.
cplx cosh_phase_integral(double x, double tau) {
    tau = std::abs(tau);
    const double lam = kPi * tau + 46.0;
    const double U = std::asinh(lam / x);
    cplx total = 0;
    for (int s : {1, -1}) {
        const double b = 2.0 * tau * s;
        auto f = [&](double u) { return std::exp(I * (x * std::cosh(u) + b * u)); };
        auto g = [&](double v) {
            cplx u(U, v);
            return I * std::exp(I * (x * std::cosh(u) + b * u));
        };
        total += integrate_gk(f, 0.0, U, 1e-11, 1e-10, 30).value;
        total += integrate_gk(g, 0.0, kPi / 2, 1e-11, 1e-10, 30).value;
    }
    return 0.5 * total;
}

}  // namespace

cplx bessel_J_imag_order_scaled(double tau, double x) {
    if (!(x > 0)) throw InvalidArgs("Bessel argument must be positive");
    const double xs = std::max(30.0, 4 * std::abs(tau));
    if (x <= xs && std::abs(tau) <= 100) {
        double canc = 0;
        cplx v = bessel_J_series(tau, x, &canc);
        if (canc < 1e5) return v / std::cosh(kPi * tau);
    }
    cplx C = cosh_phase_integral(x, tau);
    // J/cosh = (2/pi)(A - i tanh(pi tau) B) with C = B + iA
    return (2.0 / kPi) * (C.imag() - I * std::tanh(kPi * tau) * C.real());
}

cplx bessel_J_imag_order(double tau, double x) {
    if (std::abs(tau) > 100) throw OutOfRange("use the scaled J for |tau| > 100");
    return bessel_J_imag_order_scaled(tau, x) * std::cosh(kPi * tau);
}

cplx bessel_J_asymptotic(double tau, double x, int terms) {
    const double h = x / 2;
    const double a2 = 2 * std::sqrt(h * h + tau * tau);
    cplx corr = 1.0;
    if (terms >= 1) corr += I * (-1.0 / (8 * a2) + 5 * tau * tau / (6 * a2 * a2 * a2));
    // stationary point of 2h cosh u + 2|tau| u; phase there is -2 omega
    cplx C = 0.5 * std::sqrt(kTwoPi / a2) * std::polar(1.0, kPi / 4 - 2 * omega_phase(h, tau)) * corr;
    const double th = std::tanh(kPi * std::abs(tau));
    cplx scaled = (-I / kPi) * ((1 + th) * C + (th - 1) * std::conj(C));
    if (tau < 0) scaled = std::conj(scaled);
    return scaled * std::cosh(kPi * tau);
}

LogScaled bessel_K_imag_order_logscaled(double tau, double x) {
    if (!(x > 0)) throw InvalidArgs("Bessel argument must be positive");
    tau = std::abs(tau);
    // shift the line to Im u = theta; through the saddle when x > 2 tau
    double theta = x > 2 * tau ? std::asin(2 * tau / x) : kPi / 2;
    const double dmin = std::min(kPi / 2, 1.0 / std::max(1.0, std::abs(2 * tau - x)));
    theta = std::min(theta, kPi / 2 - dmin);
    const double c = std::cos(theta), s = std::sin(theta);
    const double umax = std::acosh(1.0 + 60.0 / (x * c));
    auto f = [&](double u) {
        return std::exp(cplx(-x * c * (std::cosh(u) - 1.0), 2 * tau * u - x * s * std::sinh(u)));
    };
    auto r = integrate_gk(f, 0.0, umax, 1e-13, 1e-10, 30);
    LogScaled out;
    out.value = r.value.real();
    out.log_scale = -2 * tau * theta - x * c;
    return out;
}

double bessel_K_scaled(double tau, double x) {
    LogScaled k = bessel_K_imag_order_logscaled(tau, x);
    return k.value.real() * std::exp(k.log_scale + log_cosh(kPi * tau));
}

double bessel_K_imag_order(double tau, double x) {
    LogScaled k = bessel_K_imag_order_logscaled(tau, x);
    return k.value.real() * std::exp(k.log_scale);
}

double kernel_J_plus(double t_f, double x) { return 4.0 * cosh_phase_integral(x, t_f).real(); }

double kernel_J_minus(double t_f, double x) { return 4.0 * bessel_K_scaled(t_f, x); }

double omega_phase(double x, double tau) {
    const double a = std::abs(tau);
    return a * std::asinh(a / x) - std::sqrt(x * x + tau * tau);
}

}  // namespace subconvex::special
