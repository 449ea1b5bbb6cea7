#include "subconvex/oscint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <boost/math/quadrature/gauss.hpp>

#include "subconvex/errors.hpp"

namespace subconvex::oscint {

PhaseModel::PhaseModel(Fn h, Fn dh, Fn d2h, PhaseUnit unit, double Y, double Q, double R)
    : h_(std::move(h)), dh_(std::move(dh)), d2h_(std::move(d2h)), unit_(unit), Y_(Y), Q_(Q), R_(R) {
    if (!h_ || !dh_ || !d2h_) throw InvalidArgs("phase needs h, h' and h''");
    if (!(Y_ > 0 && Q_ > 0 && R_ > 0)) throw InvalidArgs("phase scales must be positive");
}

PhaseModel PhaseModel::shifted(double c) const {
    Fn h = h_;
    return PhaseModel([h, c](double x) { return h(x) + c; }, dh_, d2h_, unit_, Y_, Q_, R_);
}

PhaseModel PhaseModel::with_scales(double Y, double Q, double R) const {
    return PhaseModel(h_, dh_, d2h_, unit_, Y, Q, R);
}

void PhaseModel::check_consistency(double a, double b, int samples, double rel) const {
    for (int i = 1; i < samples; ++i) {
        double x = a + (b - a) * i / samples;
        double step = 1e-5 * std::max(1.0, std::abs(x));
        double fd1 = (h_(x + step) - h_(x - step)) / (2 * step);
        double fd2 = (dh_(x + step) - dh_(x - step)) / (2 * step);
        double s1 = std::max(std::abs(dh_(x)), 1e-8 * Y_);
        double s2 = std::max(std::abs(d2h_(x)), 1e-8 * Y_);
        if (std::abs(fd1 - dh_(x)) > rel * s1 || std::abs(fd2 - d2h_(x)) > rel * s2)
            throw InvalidArgs("phase derivatives inconsistent at x = " + std::to_string(x));
    }
}

namespace {

double bump_profile(double t) {  // t in (-1, 1)
    return std::abs(t) < 1 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0;
}

double smooth_step(double t) {  // 0 for t <= 0, 1 for t >= 1
    auto psi = [](double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; };
    double a = psi(t), b = psi(1.0 - t);
    return a / (a + b);
}

}  // namespace

InertWeight bump(double alpha, double beta, double height) {
    if (!(beta > alpha)) throw InvalidArgs("bump needs alpha < beta");
    InertWeight w;
    const double mid = 0.5 * (alpha + beta), half = 0.5 * (beta - alpha);
    w.w = [=](double x) { return height * bump_profile((x - mid) / half); };
    w.alpha = alpha;
    w.beta = beta;
    w.X = height;
    w.V = half;
    return w;
}

InertWeight plateau(double a, double b, double ramp, double height) {
    if (!(b > a) || !(ramp > 0)) throw InvalidArgs("plateau needs a < b and ramp > 0");
    InertWeight w;
    w.w = [=](double x) {
        return height * smooth_step((x - (a - ramp)) / ramp) * smooth_step(((b + ramp) - x) / ramp);
    };
    w.alpha = a - ramp;
    w.beta = b + ramp;
    w.X = height;
    w.V = ramp;
    return w;
}

OscResult integrate_oscillatory(const InertWeight& w, const PhaseModel& h, double tol) {
    if (!(tol > 0)) throw InvalidArgs("tolerance must be positive");
    auto f = [&](double x) { return w.w(x) * h.factor(x); };
    // adaptive GK over thousands of oscillations stalls on its own noise floor; use fixed
    // Gauss-Legendre panels of about one cycle and compare against twice as many
    double peak = 0;
    for (int i = 0; i <= 512; ++i)
        peak = std::max(peak, std::abs(h.radians(h.dh(w.alpha + (w.beta - w.alpha) * i / 512.0))));
    const int base = 16 + static_cast<int>(std::ceil(peak * (w.beta - w.alpha) / kTwoPi));
    const auto& x = boost::math::quadrature::gauss<double, 20>::abscissa();
    const auto& wt = boost::math::quadrature::gauss<double, 20>::weights();
    auto panel_sum = [&](int panels) {
        KahanSum s;
        const double len = (w.beta - w.alpha) / panels;
        for (int j = 0; j < panels; ++j) {
            const double mid = w.alpha + (j + 0.5) * len, half = len / 2;
            for (std::size_t k = 0; k < x.size(); ++k) {
                s.add(wt[k] * half * f(mid + half * x[k]));
                if (x[k] != 0) s.add(wt[k] * half * f(mid - half * x[k]));
            }
        }
        return s.value();
    };
    const cplx coarse = panel_sum(base), fine = panel_sum(2 * base);
    const double err = std::abs(fine - coarse);
    if (!(err <= std::max(tol, 1e-10 * std::abs(fine)))) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "oscillatory integral error %.3g above %.3g", err, tol);
        throw QuadratureFailure(buf);
    }
    return {fine, err};
}

DecayReport nonstationary_decay_check(const InertWeight& w,
                                      const std::function<PhaseModel(double)>& family, int A,
                                      const std::vector<double>& ladder) {
    if (A < 1) throw InvalidArgs("A must be positive");
    if (ladder.size() < 2) throw InvalidArgs("ladder needs at least two points");
    DecayReport rep;
    for (double R : ladder) {
        PhaseModel p = family(R);
        const int grid = 1024;
        double prev = p.dh(w.alpha), min_abs = std::abs(prev);
        for (int i = 1; i <= grid; ++i) {
            double x = w.alpha + (w.beta - w.alpha) * i / grid;
            double d = p.dh(x);
            if ((d > 0) != (prev > 0) || d == 0) rep.critical_point = true;
            min_abs = std::min(min_abs, std::abs(d));
            prev = d;
        }
        if (!rep.critical_point && min_abs < p.R() * (1 - 1e-9))
            throw MisdeclaredScales("min |h'| = " + std::to_string(min_abs) + " < R = " +
                                    std::to_string(p.R()));
        double mag = std::abs(integrate_oscillatory(w, p, 1e-12).value);
        double b = (w.beta - w.alpha) * w.X *
                   (std::pow(p.Q() * p.R() / std::sqrt(p.Y()), -A) + std::pow(p.R() * w.V, -A));
        rep.R.push_back(p.R());
        rep.magnitude.push_back(mag);
        rep.bound.push_back(b);
    }
    // least-squares slope of log|I| against log R
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(rep.R.size());
    for (std::size_t i = 0; i < rep.R.size(); ++i) {
        double x = std::log(rep.R[i]), y = std::log(std::max(rep.magnitude[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    rep.fitted_exponent = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (rep.critical_point) {
        rep.pass = false;
        rep.note = "phase has a critical point in the support";
    } else {
        rep.pass = rep.fitted_exponent >= 0.9 * A;
        rep.note = rep.pass ? "decay exponent meets the bound" : "decay exponent below 0.9 A";
    }
    return rep;
}

double find_critical_point(const PhaseModel& h, double a, double b) {
    const int cells = 64;
    double lo = a, flo = h.dh(a);
    for (int i = 1; i <= cells; ++i) {
        double hi = a + (b - a) * i / cells, fhi = h.dh(hi);
        if (flo == 0) return lo;
        if ((flo < 0) != (fhi < 0) || fhi == 0) {
            if (fhi == 0) return hi;
            // safeguarded Newton inside [lo, hi]
            double x = 0.5 * (lo + hi);
            for (int it = 0; it < 200; ++it) {
                double fx = h.dh(x);
                if ((fx < 0) == (flo < 0)) {
                    lo = x;
                    flo = fx;
                } else {
                    hi = x;
                }
                double d2 = h.d2h(x);
                double nx = d2 != 0 ? x - fx / d2 : 0.5 * (lo + hi);
                if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
                if (std::abs(nx - x) <= 1e-12 * std::max(1.0, std::abs(x)) || hi - lo <= 1e-14 * std::max(1.0, std::abs(x)))
                    return nx;
                x = nx;
            }
            return x;
        }
        lo = hi;
        flo = fhi;
    }
    throw NoCriticalPoint("h' has no sign change on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
}

StationaryResult stationary_phase_leading(const InertWeight& w, const PhaseModel& h) {
    StationaryResult r;
    r.t0 = find_critical_point(h, w.alpha, w.beta);
    r.X1 = std::max(std::abs(w.alpha), std::abs(w.beta));
    double d2 = h.d2h(r.t0);
    if (std::abs(d2) < 1e-8 * h.Y() / (r.X1 * r.X1))
        throw DegenerateSecondDerivative("h''(t0) = " + std::to_string(d2));
    r.h2 = h.radians(d2);
    r.Y_prime = std::abs(r.h2) * r.X1 * r.X1;
    double sgn = r.h2 > 0 ? 1.0 : -1.0;
    r.value = w.w(r.t0) * std::sqrt(kTwoPi / std::abs(r.h2)) *
              std::polar(1.0, h.radians(h.h(r.t0)) + sgn * kPi / 4);
    return r;
}

SchwartzSpec gaussian(double width, double center) {
    if (!(width > 0)) throw InvalidArgs("width must be positive");
    SchwartzSpec s;
    s.f = [=](double x) {
        double u = (x - center) / width;
        return cplx(std::exp(-kPi * u * u), 0.0);
    };
    s.fhat = [=](double xi) {
        return width * std::exp(-kPi * width * width * xi * xi) * std::polar(1.0, -kTwoPi * center * xi);
    };
    s.width = width;
    s.center = center;
    return s;
}

namespace {

// sums term(k) over all integers k, outward from k0, stopping after a run of negligible terms
template <class F>
cplx sum_both_ways(F&& term, long long k0, long long min_reach, long long max_terms, long long* count,
                   double* biggest) {
    KahanSum acc;
    double big = 0;
    long long used = 0;
    for (int dir : {1, -1}) {
        int quiet = 0;
        for (long long j = (dir == 1 ? 0 : 1);; ++j) {
            cplx v = term(k0 + dir * j);
            acc.add(v);
            ++used;
            big = std::max(big, std::abs(v));
            quiet = std::abs(v) <= 1e-20 * std::max(big, 1e-300) ? quiet + 1 : 0;
            if (j > min_reach && quiet >= 4) break;
            if (used > max_terms) throw TruncationFailure("series did not decay within the term budget");
        }
    }
    *count = used;
    *biggest = big;
    return acc.value();
}

}  // namespace

PoissonReport poisson_verify(const SchwartzSpec& f, long long beta, long long c, long long max_terms) {
    if (c < 1) throw InvalidArgs("modulus must be positive");
    PoissonReport rep;
    double big_l = 0, big_r = 0;
    long long reach_l = static_cast<long long>(std::ceil(f.width / c)) + 2;
    long long k0 = std::llround((f.center - static_cast<double>(beta)) / c);
    rep.lhs = sum_both_ways([&](long long k) { return f.f(static_cast<double>(beta + k * c)); }, k0,
                            reach_l, max_terms, &rep.lhs_terms, &big_l);
    long long reach_r = static_cast<long long>(std::ceil(c / f.width)) + 2;
    rep.rhs = sum_both_ways(
                  [&](long long n) {
                      double xi = static_cast<double>(n) / c;
                      return f.fhat(xi) * std::polar(1.0, kTwoPi * static_cast<double>((n % c) * beta % c) / c);
                  },
                  0, reach_r, max_terms, &rep.rhs_terms, &big_r) /
              static_cast<double>(c);
    rep.discrepancy = std::abs(rep.lhs - rep.rhs);
    rep.dominant_fraction = std::abs(rep.rhs) > 0 ? big_r / c / std::abs(rep.rhs) : 0.0;
    return rep;
}

}  // namespace subconvex::oscint
