#include "subconvex/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss.hpp>

#include "subconvex/oscint.hpp"

namespace subconvex::transforms {

namespace {

constexpr cplx I{0, 1};

// exp(-4/(1-t^2) + 4) on (1, 2), maximum 1. The factor 4 makes the Fourier transform decay
// like exp(-sqrt(8 omega)) rather than exp(-sqrt(2 omega)).
double bump_profile(double u) {
    if (u <= 1 || u >= 2) return 0;
    double t = 2 * u - 3;
    return std::exp(4 - 4 / (1 - t * t));
}

double bump_mass() {
    static const double m =
        integrate_gk([](double u) { return bump_profile(u); }, 1, 2, 1e-15, 1e-13).value;
    return m;
}

// int_1^2 a(xi) xi^{-i tau} dxi on a fixed composite Gauss-Legendre grid, rebuilt with more
// panels once |tau| outgrows it.
class UnitMellin {
public:
    UnitMellin(std::function<cplx(double)> a, double a_cycles)
        : a_(std::move(a)), a_cycles_(a_cycles) {
        build(64);
    }

    cplx operator()(double tau) {
        if (std::abs(tau) > tau_max_) build(1.5 * std::abs(tau));
        cplx s = 0;
        for (std::size_t j = 0; j < u_.size(); ++j) s += c_[j] * std::polar(1.0, -tau * u_[j]);
        return s;
    }

private:
    void build(double tau_max) {
        const double cycles = a_cycles_ + tau_max * std::log(2.0) / kTwoPi;
        const int panels = std::max(16, static_cast<int>(std::ceil(cycles / 3)) + 8);
        const auto& x = boost::math::quadrature::gauss<double, 20>::abscissa();
        const auto& w = boost::math::quadrature::gauss<double, 20>::weights();
        const double h = 1.0 / panels;
        u_.clear();
        c_.clear();
        for (int p = 0; p < panels; ++p) {
            const double mid = 1.0 + (p + 0.5) * h;
            for (std::size_t k = 0; k < x.size(); ++k)
                for (int sgn : {-1, 1}) {
                    const double xi = mid + sgn * x[k] * h / 2;
                    const cplx c = a_(xi) * (w[k] * h / 2);
                    if (c == cplx{}) continue;
                    u_.push_back(std::log(xi));
                    c_.push_back(c);
                }
        }
        tau_max_ = tau_max;
    }

    std::function<cplx(double)> a_;
    double a_cycles_;
    double tau_max_ = 0;
    std::vector<double> u_;
    std::vector<cplx> c_;
};

// Integral of f over [a, b] on Gauss-Legendre panels of width min(4, 14/omega(|tau|)),
// omega bounding the phase derivative of f.
template <class F, class W>
cplx integrate_panels(F&& f, W&& omega, double a, double b) {
    const auto& x = boost::math::quadrature::gauss<double, 20>::abscissa();
    const auto& w = boost::math::quadrature::gauss<double, 20>::weights();
    cplx s = 0;
    for (double u = a; u < b;) {
        const double far = std::max(std::abs(u), std::abs(u + 4));
        const double width = std::min({4.0, 14.0 / omega(far), b - u});
        const double mid = u + width / 2, half = width / 2;
        cplx p = 0;
        for (std::size_t k = 0; k < x.size(); ++k)
            p += w[k] * (f(mid + half * x[k]) + f(mid - half * x[k]));
        s += p * half;
        u += width;
    }
    return s;
}

// Integral of f over the real line, starting from [c - h, c + h] and extending in both
// directions until the newest pieces are below tol relative to max(|total|, floor).
template <class F, class W>
cplx integrate_window(F&& f, W&& omega, double c, double h, double tol, double floor,
                      double h_max, double* lo, double* hi, double* err) {
    auto piece = [&](double a, double b) { return integrate_panels(f, omega, a, b); };
    double a = c - h, b = c + h;
    cplx total = piece(a, b);
    double step = std::max(h / 2, 16.0);
    for (;;) {
        cplx left = piece(a - step, a), right = piece(b, b + step);
        total += left + right;
        a -= step;
        b += step;
        const double added = std::abs(left) + std::abs(right);
        if (added <= tol * std::max(std::abs(total), floor)) {
            if (err) *err = added;
            break;
        }
        if (b - c > h_max)
            throw TruncationFailure("tau window exceeded " + std::to_string(h_max));
        step *= 1.25;
    }
    if (lo) *lo = a;
    if (hi) *hi = b;
    return total;
}

const oscint::InertWeight& w1_factor() {
    static const oscint::InertWeight w = oscint::plateau(0.5, 2.0, 0.25);
    return w;
}

}  // namespace

std::string to_string(RegimeTag t) {
    switch (t) {
        case RegimeTag::NEGLIGIBLE: return "NEGLIGIBLE";
        case RegimeTag::OSC_STATIONARY: return "OSC_STATIONARY";
        case RegimeTag::OSC_KERNEL_II: return "OSC_KERNEL_II";
        case RegimeTag::OSC_KERNEL_III: return "OSC_KERNEL_III";
        case RegimeTag::NONOSC: return "NONOSC";
    }
    return "?";
}

void TransformParams::validate() const {
    if (!(N > 0 && X > 0 && P > 0 && Q > 0 && q > 0 && r >= 1))
        throw InvalidArgs("N, X, P, Q, q must be positive and r >= 1");
    if (!(spectral.t_f > 0)) throw InvalidArgs("t_f must be positive");
}

double weight_unit_mass(double u) { return bump_profile(u) / bump_mass(); }
double weight_unit_height(double u) { return bump_profile(u); }

// ---------------------------------------------------------------- Psi

RegimeTag classify_psi_regime(double z, const TransformParams& p, int sign,
                              const RegimeConstants& rc) {
    const double Teps = std::pow(p.spectral.T(), rc.eps);
    const double zN = z * p.N;
    const double beta = p.N * p.x / (p.q * p.Q);
    if (zN < Teps) return std::abs(beta) < Teps ? RegimeTag::NONOSC : RegimeTag::NEGLIGIBLE;
    const int sx = p.x > 0 ? 1 : -1;
    if (sx != sign) return RegimeTag::NEGLIGIBLE;
    const double size = std::cbrt(zN);
    const double b = std::abs(beta);
    return (b >= rc.c1 * size && b <= rc.c2 * size) ? RegimeTag::OSC_STATIONARY
                                                    : RegimeTag::NEGLIGIBLE;
}

PsiResult psi_transform(double z, const TransformParams& p, int sign, double tol,
                        const RegimeConstants& rc) {
    p.validate();
    if (!(z > 0)) throw InvalidArgs("psi_transform needs z > 0");
    if (sign != 1 && sign != -1) throw InvalidArgs("sign must be +1 or -1");
    const double beta = p.N * p.x / (p.q * p.Q);
    const special::GammaFactorGL3 g3{};
    const double logzN = std::log(kPi * kPi * kPi * z * p.N);
    // Psi(z) = z/(2 pi) int (pi^3 z)^{-s} gamma(s) N^{1-s} Vtilde(s) dtau, s = 1/2 + i tau
    UnitMellin vt([beta](double xi) { return weight_unit_mass(xi) * e_of(-beta * xi) / std::sqrt(xi); },
                  std::abs(beta));
    auto f = [&](double tau) {
        const cplx s{0.5, tau};
        return std::exp(-s * logzN) * special::gamma3_pm(s, g3, sign) * vt(tau);
    };
    PsiResult res;
    double err = 0;
    auto omega = [&](double tau) {
        return std::abs(logzN) + 3 * std::log(2 + tau) + kTwoPi * std::abs(beta) + 2;
    };
    // natural size of Psi is (zN)^{1/2}; v carries a factor 2 pi / (zN)
    const double floor = kTwoPi / std::sqrt(z * p.N);
    cplx v = integrate_window(f, omega, -3 * kPi * beta, kPi * std::abs(beta) + 24, tol, floor,
                              1e5 + 20 * std::abs(beta), nullptr, nullptr, &err);
    // (pi^3 z)^{-s} N^{1-s} = N (pi^3 z N)^{-s}
    res.value = v * (z * p.N / kTwoPi);
    res.err = err * (z * p.N / kTwoPi);
    res.tag = classify_psi_regime(z, p, sign, rc);
    return res;
}

// ---------------------------------------------------------------- G

cplx GSpec::g(double x) const {
    const double xi = x / N;
    const double w = weight_unit_height(xi);
    if (w == 0) return 0;
    return w * e_of(sign * 3 * B * std::cbrt(xi) + beta * xi) * std::polar(1.0, -t * std::log(x));
}

GResult G_transform_mellin(double y, const GSpec& g, int sign1, double tol) {
    if (!(y > 0) || !(g.N > 0)) throw InvalidArgs("G_transform needs y > 0 and N > 0");
    if (sign1 != 1 && sign1 != -1) throw InvalidArgs("sign1 must be +1 or -1");
    const double logyN = std::log(kPi * kPi * y * g.N);
    const cplx Nit = std::polar(1.0, -g.t * std::log(g.N));
    // G = eps/(4 pi^2) int (pi^2 y)^{-s} gamma(s) gtilde(-s) dtau, s = -1/2 + i tau,
    // gtilde(-s) = N^{-s} N^{-it} int W(xi) e(...) xi^{-1/2 - i(tau + t)} dxi
    UnitMellin gt(
        [&g](double xi) {
            return weight_unit_height(xi) * e_of(g.sign * 3 * g.B * std::cbrt(xi) + g.beta * xi) /
                   std::sqrt(xi);
        },
        std::abs(g.B) + std::abs(g.beta));
    auto f = [&](double tau) {
        const cplx s{-0.5, tau};
        return std::exp(-s * logyN) * special::gamma_gl2_mellin(s, g.t_f, sign1) * gt(tau + g.t);
    };
    const double c = -g.t + kTwoPi * (g.sign * g.B * std::cbrt(1.5) + 1.5 * g.beta);
    const double h = kTwoPi * (0.15 * std::abs(g.B) + 0.5 * std::abs(g.beta)) + 24;
    GResult res;
    double err = 0;
    auto omega = [&](double tau) {
        return std::abs(logyN) + 2 * std::log(2 + tau + g.t_f + std::abs(g.t)) +
               kTwoPi * (std::abs(g.B) + std::abs(g.beta)) + 2;
    };
    // natural size of G is (yN)^{1/2}
    const double floor = 4 * kPi * kPi * std::sqrt(y * g.N);
    cplx v = integrate_window(f, omega, c, h, tol, floor, 1e5, &res.tau_lo, &res.tau_hi, &err);
    const double eps = sign1 < 0 ? g.eps_f : 1;
    res.value = eps * Nit * v / (4 * kPi * kPi);
    res.err = err / (4 * kPi * kPi);
    return res;
}

GResult G_transform_bessel(double y, const GSpec& g, int sign1, double tol) {
    if (!(y > 0) || !(g.N > 0)) throw InvalidArgs("G_transform needs y > 0 and N > 0");
    if (sign1 != 1 && sign1 != -1) throw InvalidArgs("sign1 must be +1 or -1");
    auto f = [&](double xi) {
        const double arg = 4 * kPi * std::sqrt(y * g.N * xi);
        const double k = sign1 > 0 ? special::kernel_J_plus(g.t_f, arg)
                                   : special::kernel_J_minus(g.t_f, arg);
        return g.g(g.N * xi) * k;
    };
    // split so the adaptive rule sees the oscillation of the kernel
    const double cycles = 2 * std::sqrt(y * g.N) * (std::sqrt(2.0) - 1) + 3 * std::abs(g.B) +
                          std::abs(g.beta) + g.t_f;
    const int panels = std::max(4, static_cast<int>(std::ceil(cycles / 4)));
    cplx s = 0;
    double err = 0;
    for (int k = 0; k < panels; ++k) {
        // the kernel itself is good to about 1e-10, so do not ask for more
        auto r = integrate_gk_nothrow(f, 1.0 + double(k) / panels, 1.0 + double(k + 1) / panels,
                                      std::max(tol, 1e-8), 12);
        s += r.value;
        err += r.err;
    }
    const double eps = sign1 < 0 ? g.eps_f : 1;
    GResult res;
    res.value = eps * y * g.N * s;
    res.err = y * g.N * err;
    return res;
}

RegimeTag classify_G_regime(const TransformParams& p, const RegimeConstants& rc) {
    p.validate();
    const double Y = p.oscillation();
    const double T = p.spectral.T(), Tp = std::abs(p.spectral.Tprime());
    if (Y <= std::pow(T, rc.eps)) return RegimeTag::NONOSC;
    if (Tp <= 0 || Y >= std::pow(Tp, 1 - rc.eps)) return RegimeTag::OSC_KERNEL_II;
    return RegimeTag::OSC_KERNEL_III;
}

// ---------------------------------------------------------------- xi* series

namespace {

using Series = std::vector<double>;

Series mul(const Series& a, const Series& b, std::size_t n) {
    Series c(n, 0.0);
    for (std::size_t i = 0; i < a.size() && i < n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

PhaseSeries xi_star_series(double B, const SpectralParams& p, double yN, int L, int sign) {
    if (L < 0) throw InvalidArgs("L must be non-negative");
    if (sign != 1 && sign != -1) throw InvalidArgs("sign must be +1 or -1");
    if (!(yN > 0) || !(B > 0)) throw InvalidArgs("xi_star_series needs B > 0 and yN > 0");
    const double T = p.T(), Tp = p.Tprime();
    if (!(T > 0) || Tp == 0) throw InvalidArgs("T must be positive and T' non-zero");
    if (B / std::abs(Tp) >= 0.25) throw SeriesDivergence("B/|T'| >= 1/4");

    PhaseSeries out;
    out.B = B;
    out.L = L;
    out.sign = sign;
    out.u = B / T;
    out.v = B / Tp;
    out.xi0 = std::cbrt(kTwoPi * T * std::abs(Tp) / yN);
    const double x0 = out.xi0, s = sign;
    const double ut = out.u * x0, vt = out.v * x0;  // scaled so zeta = xi/xi0 solves
    const std::size_t n = static_cast<std::size_t>(L) + 1;  // zeta^3 = (1 - s ut zeta)(1 - s vt zeta)

    // coefficients of eps^l, with ut, vt carrying one power of eps each
    Series zeta(n, 0.0);
    zeta[0] = 1;
    for (std::size_t l = 1; l < n; ++l) {
        Series cube = mul(mul(zeta, zeta, n), zeta, n);
        Series a(n, 0.0), b(n, 0.0);  // 1 - s ut eps zeta, 1 - s vt eps zeta
        a[0] = b[0] = 1;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            a[i + 1] -= s * ut * zeta[i];
            b[i + 1] -= s * vt * zeta[i];
        }
        Series rhs = mul(a, b, n);
        zeta[l] = (rhs[l] - cube[l]) / 3;  // cube[l] was computed with zeta[l] = 0
    }
    out.xi.resize(n);
    for (std::size_t l = 0; l < n; ++l) out.xi[l] = x0 * zeta[l];
    out.series_root = 0;
    for (double v : out.xi) out.series_root += v;

    // bracket: 3 zeta + sum_{j>=2} (s^{j-1}/j)(ut^{j-1} + vt^{j-1}) eps^{j-1} zeta^j
    Series br(n, 0.0);
    for (std::size_t l = 0; l < n; ++l) br[l] = 3 * zeta[l];
    Series zp = zeta;  // zeta^j
    for (std::size_t j = 2; j <= n; ++j) {
        zp = mul(zp, zeta, n);
        const double c = std::pow(s, double(j - 1)) / double(j) *
                         (std::pow(ut, double(j - 1)) + std::pow(vt, double(j - 1)));
        for (std::size_t i = 0; i + (j - 1) < n; ++i) br[i + j - 1] += c * zp[i];
    }
    out.coeffs.resize(n);
    for (std::size_t l = 0; l < n; ++l) out.coeffs[l] = br[l] / std::pow(x0, double(l));

    // Newton on f(xi) = xi^3 - xi0^3 (1 - s u xi)(1 - s v xi) from xi0
    const double u = out.u, v = out.v, c3 = x0 * x0 * x0;
    double xi = x0;
    for (int it = 0; it < 100; ++it) {
        double f = xi * xi * xi - c3 * (1 - s * u * xi) * (1 - s * v * xi);
        double df = 3 * xi * xi - c3 * (-s * u * (1 - s * v * xi) - s * v * (1 - s * u * xi));
        double d = f / df;
        xi -= d;
        if (std::abs(d) <= 1e-16 * std::abs(xi)) break;
    }
    out.numeric_root = xi;
    return out;
}

PhaseValue phase_at_xistar(const PhaseSeries& s, const SpectralParams& p, double yN) {
    const double T = p.T(), Tp = p.Tprime(), B = s.B, sg = s.sign;
    PhaseValue out;
    const double main = -(T / kTwoPi) * std::log(T / (2 * std::exp(1.0))) -
                        (Tp / kTwoPi) * std::log(std::abs(Tp) / (2 * std::exp(1.0)));
    double sum = 0;
    for (std::size_t l = 0; l < s.coeffs.size(); ++l)
        sum += s.coeffs[l] * std::pow(s.xi0, double(l + 1));
    out.expansion = main + sg * B / kTwoPi * sum;

    const double xi = s.numeric_root;
    const double a = T - sg * B * xi, b = std::abs(Tp - sg * B * xi);
    out.direct =
        -sg * (B * xi / kTwoPi) * std::log(yN * xi * xi * xi / (kTwoPi * std::exp(1.0) * a * b)) -
        (T / kTwoPi) * std::log(a / (2 * std::exp(1.0))) -
        (Tp / kTwoPi) * std::log(b / (2 * std::exp(1.0)));
    return out;
}

// ---------------------------------------------------------------- I kernels

double W1_standin(double a, double b, double c) {
    const auto& w = w1_factor().w;
    return w(a) * w(b) * w(c);
}

cplx w_pm1(double tau, const SpectralParams& p, std::int64_t r, int sign, int sign1, int eps_f) {
    if (!(sign * tau > 0)) return 0;
    const double eps = sign1 < 0 ? eps_f : 1;
    const double phase = 2 * p.t * std::log(kPi) - tau * std::log(kPi * kPi * double(r));
    return eps / (4 * kPi) * std::polar(1.0, phase) * special::gamma2_pm(tau, p, sign1) *
           e_of(-(3 * tau / kTwoPi) * std::log(sign * tau / (kTwoPi * std::exp(1.0))));
}

namespace {

double kernel_B(const KernelArgs& k, const TransformParams& p) {
    return std::cbrt(p.N) * std::cbrt(double(k.n1) * double(k.n1) * k.n2) /
           (std::cbrt(double(k.r)) * k.q);
}

}  // namespace

// Regime II kernel as a node sum over tau. The stand-in W1 is a product, so the n2 dependence
// is w(a1(n2)) n2^{i tau}; nodes are laid out for n2 in [n2_lo, n2_hi].
class KernelII {
public:
    KernelII(const KernelArgs& k, const TransformParams& p, double n2_lo, double n2_hi)
        : k_(k), p_(p), Y_(p.oscillation()) {
        const SpectralParams& sp = p.spectral;
        const double n1sq = double(k.n1) * double(k.n1);
        const double a3 = k.q / p.P;
        const double base = std::log(n1sq / (k.m * k.q));  // the n2-free part of the tau phase
        const double lg = std::max(std::abs(base + std::log(n2_lo)), std::abs(base + std::log(n2_hi)));
        const double T = std::abs(sp.T()) + std::abs(sp.Tprime());
        auto omega = [&](double tau) {
            return lg + std::log(kPi * kPi * double(k.r)) + 2 * std::log(2 + tau + T) +
                   3 * std::log(2 + tau) + 8;
        };
        // support of the stand-in in tau: sign * tau / Y in [0.25, 2.25]
        const double lo = k.sign > 0 ? 0.25 * Y_ : -2.25 * Y_, hi = k.sign > 0 ? 2.25 * Y_ : -0.25 * Y_;
        const auto& x = boost::math::quadrature::gauss<double, 20>::abscissa();
        const auto& w = boost::math::quadrature::gauss<double, 20>::weights();
        const auto& wf = w1_factor().w;
        for (double u = lo; u < hi;) {
            const double far = std::max(std::abs(u), std::abs(u + 4));
            const double width = std::min({4.0, 14.0 / omega(far), hi - u});
            const double mid = u + width / 2, half = width / 2;
            for (std::size_t j = 0; j < x.size(); ++j)
                for (int sg : {-1, 1}) {
                    const double tau = mid + sg * half * x[j];
                    const double amp = wf(k.sign * tau / Y_) * wf(a3);
                    if (amp == 0) continue;
                    tau_.push_back(tau);
                    c_.push_back(w[j] * half * amp * std::polar(1.0, tau * base) *
                                 w_pm1(tau, sp, k.r, k.sign, k.sign1, k.eps_f));
                }
            u += width;
        }
    }

    cplx operator()(double n2) const {
        const double a1 = double(k_.n1) * double(k_.n1) * n2 * std::pow(p_.Q, 3) /
                          (double(k_.r) * p_.N * p_.N * std::pow(p_.X, 3));
        const double wa = w1_factor().w(a1);
        if (wa == 0) return 0;
        const double ln = std::log(n2);
        cplx s = 0;
        for (std::size_t j = 0; j < tau_.size(); ++j) s += c_[j] * std::polar(1.0, tau_[j] * ln);
        return std::sqrt(1 / Y_) * wa * s;
    }

private:
    KernelArgs k_;
    TransformParams p_;
    double Y_;
    std::vector<double> tau_;
    std::vector<cplx> c_;
};

cplx I_kernel(const KernelArgs& k, const TransformParams& p, RegimeTag regime) {
    p.validate();
    if (!(k.n2 > 0) || !(k.m > 0) || !(k.q > 0) || k.n1 < 1 || k.r < 1)
        throw InvalidArgs("I_kernel needs positive n2, m, q and n1, r >= 1");
    const SpectralParams& sp = p.spectral;
    if (regime == RegimeTag::OSC_KERNEL_III) {
        const double B = kernel_B(k, p);
        const double yN = k.m * p.N / (k.q * k.q);
        PhaseSeries s = xi_star_series(B, sp, yN, k.L, k.sign);
        double sum = 0;
        for (std::size_t l = 0; l < s.coeffs.size(); ++l)
            sum += s.coeffs[l] * std::pow(s.xi0, double(l + 1));
        return e_of(k.sign * B / kTwoPi * sum);
    }
    if (regime == RegimeTag::OSC_KERNEL_II) return KernelII(k, p, k.n2, k.n2)(k.n2);
    throw WrongRegime("I_kernel is defined for OSC_KERNEL_II and OSC_KERNEL_III only");
}

double frak_N2(const FrakIArgs& a, const TransformParams& p) {
    return double(a.r) * p.N * p.N * std::pow(p.X, 3) /
           (double(a.n1) * double(a.n1) * std::pow(p.Q, 3));
}

double frak_modulus(const FrakIArgs& a) {
    return double(a.r) * double(a.q1) * double(a.q2) * double(a.q2p) / double(a.n1);
}

double frak_n_cutoff(const FrakIArgs& a, const TransformParams& p) {
    return p.P * p.Q * p.Q * double(a.n1) / (double(a.q1) * p.N * p.X * p.X);
}

FrakIResult frak_I(std::int64_t n, const FrakIArgs& a, const TransformParams& p, RegimeTag regime,
                   double tol) {
    p.validate();
    if (a.n1 < 1 || a.r < 1 || a.q1 < 1 || a.q2 < 1 || a.q2p < 1)
        throw InvalidArgs("frak_I needs n1, r, q1, q2, q2' >= 1");
    const double N2 = frak_N2(a, p), mod = frak_modulus(a);
    KernelArgs k1{1, a.n1, a.r, a.m, double(a.q1 * a.q2), a.sign, a.sign1, a.eps_f, a.L};
    KernelArgs k2{1, a.n1, a.r, a.mp, double(a.q1 * a.q2p), a.sign, a.sign1, a.eps_f, a.L};
    if (regime != RegimeTag::OSC_KERNEL_II && regime != RegimeTag::OSC_KERNEL_III)
        throw WrongRegime("frak_I is defined for OSC_KERNEL_II and OSC_KERNEL_III only");
    std::unique_ptr<KernelII> K1, K2;
    if (regime == RegimeTag::OSC_KERNEL_II) {
        K1 = std::make_unique<KernelII>(k1, p, N2, 2 * N2);
        K2 = std::make_unique<KernelII>(k2, p, N2, 2 * N2);
    }
    auto kernel = [&](const KernelArgs& k, const std::unique_ptr<KernelII>& K, double n2) {
        if (K) return (*K)(n2);
        KernelArgs x = k;
        x.n2 = n2;
        return I_kernel(x, p, regime);
    };
    auto f = [&](double xi) {
        double w = weight_unit_height(xi);
        if (w == 0) return cplx(0);
        return w * kernel(k1, K1, N2 * xi) * std::conj(kernel(k2, K2, N2 * xi)) *
               e_of(-double(n) * N2 * xi / mod);
    };
    // xi^{i tau} with |tau| up to 2.25 NX/PQ in regime II
    const double cycles = std::abs(double(n)) * N2 / mod + 0.3 * p.oscillation() + 4;
    const int panels = std::max(4, static_cast<int>(std::ceil(cycles / 4)));
    cplx s = 0;
    double err = 0;
    for (int j = 0; j < panels; ++j) {
        auto r = integrate_gk_nothrow(f, 1.0 + double(j) / panels, 1.0 + double(j + 1) / panels,
                                      tol, 12);
        s += r.value;
        err += r.err;
    }
    return {N2 * s, N2 * err};
}

}  // namespace subconvex::transforms
