#include "subconvex/deltamethod.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "subconvex/arith.hpp"
#include "subconvex/errors.hpp"

namespace subconvex::delta {

namespace {

double skew_profile(double s) {
    if (s <= 0 || s >= 1) return 0.0;
    return std::exp(-1.0 / s - 0.5 / (1.0 - s));
}

// integral of skew_profile over (0, 1)
double profile_mass() {
    static const double m =
        integrate_gk([](double s) { return skew_profile(s); }, 0.0, 1.0, 1e-15, 1e-12).value;
    return m;
}

// Kronrod 15 nodes on [-1, 1] with their weights.
struct PanelRule {
    std::vector<double> x, w;
};

const PanelRule& panel_rule() {
    static const PanelRule rule = [] {
        using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
        const auto& ka = GK::abscissa();
        const auto& kw = GK::weights();
        PanelRule r;
        for (std::size_t i = 0; i < ka.size(); ++i) {
            r.x.push_back(ka[i]);
            r.w.push_back(kw[i]);
            if (ka[i] != 0) {
                r.x.push_back(-ka[i]);
                r.w.push_back(kw[i]);
            }
        }
        return r;
    }();
    return rule;
}

const double kVlo = 1.1, kVhi = 1.9;

double bump_raw(double u) {
    if (u <= kVlo || u >= kVhi) return 0.0;
    double t = (2 * u - kVlo - kVhi) / (kVhi - kVlo);
    return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double smooth_step(double t) {
    auto psi = [](double s) { return s > 0 ? std::exp(-1.0 / s) : 0.0; };
    double a = psi(t), b = psi(1.0 - t);
    return a / (a + b);
}

}  // namespace

void validate(const DeltaConfig& cfg) {
    if (!(cfg.Q >= 10)) throw InvalidArgs("delta method needs Q >= 10");
    if (!(cfg.quad_tol > 0)) throw InvalidArgs("quad_tol must be positive");
    if (cfg.x_cutoff < 0) throw InvalidArgs("x_cutoff must be nonnegative");
    if (!(cfg.tail_tol > 0)) throw InvalidArgs("tail_tol must be positive");
}

double bump_w(double u, const DeltaConfig& cfg) {
    const double half = 0.5 * cfg.Q;
    return skew_profile((u - half) / half) / (half * profile_mass());
}

double g_weight(i64 q, double x, const DeltaConfig& cfg) {
    if (q < 1 || static_cast<double>(q) > cfg.Q)
        throw OutOfRange("g_weight needs 1 <= q <= Q, got q = " + std::to_string(q));
    double ax = std::abs(x);
    if (ax < 1) return 1.0;
    // kQ/|x| in (Q/2, Q) means k in (|x|/2, |x|)
    i64 k0 = static_cast<i64>(std::floor(ax / 2));
    i64 k1 = static_cast<i64>(std::ceil(ax));
    double s = 0;
    for (i64 k = std::max<i64>(1, k0); k <= k1; ++k) s += bump_w(k * cfg.Q / ax, cfg);
    return 1.0 - cfg.Q / ax * s;
}

double g_atom(i64 q, const DeltaConfig& cfg) {
    if (q < 1 || static_cast<double>(q) > cfg.Q)
        throw OutOfRange("g_atom needs 1 <= q <= Q, got q = " + std::to_string(q));
    double s = 0;
    for (i64 r = 1; static_cast<double>(q * r) <= cfg.Q; ++r) s += bump_w(double(q * r), cfg) / r;
    const double half = 0.5 * cfg.Q;
    double li = integrate_gk([&](double z) { return bump_w(z, cfg) / z; }, half, cfg.Q, 1e-15, 1e-12)
                    .value;
    return (s - li) / q;
}

i64 n_max(const DeltaConfig& cfg) { return static_cast<i64>(std::floor(cfg.Q * cfg.Q / 2)); }

namespace {

struct Grid {
    std::vector<double> x, gk;  // nodes and g times the Kronrod weights
};

}  // namespace

struct DeltaExpansion::GridCache {
    std::mutex mu;
    std::map<int, std::shared_ptr<const Grid>> levels;
    std::map<i64, cplx> values;  // delta_expand by n
};

DeltaExpansion::DeltaExpansion(const DeltaConfig& cfg)
    : cfg_(cfg), grids_(std::make_shared<GridCache>()) {
    validate(cfg_);
    const double half = 0.5 * cfg_.Q;
    log_integral_ =
        integrate_gk([&](double z) { return bump_w(z, cfg_) / z; }, half, cfg_.Q, 1e-15, 1e-12).value;
    atoms_.resize(static_cast<std::size_t>(cfg_.Q) + 1);
    for (i64 q = 1; q < static_cast<i64>(atoms_.size()); ++q) {
        double s = 0;
        for (i64 r = 1; static_cast<double>(q * r) <= cfg_.Q; ++r)
            s += bump_w(double(q * r), cfg_) / r;
        atoms_[q] = (s - log_integral_) / q;
    }

    if (cfg_.x_cutoff > 0) {
        X_ = cfg_.x_cutoff;
    } else {
        // first point after which |g| stays below tail_tol for the next 40 units
        const double step = 0.25, window = 40, limit = 5000;
        double last_big = 1;
        for (double x = 1; x < last_big + window; x += step) {
            if (x > limit) throw QuadratureFailure("g does not decay below tail_tol by |x| = 5000");
            if (std::abs(g_weight(1, x, cfg_)) > cfg_.tail_tol) last_big = x;
        }
        X_ = std::ceil(last_big + step);
    }
}

QuadResult<double> DeltaExpansion::x_integral(i64 q, i64 n) const {
    if (q < 1 || static_cast<double>(q) > cfg_.Q)
        throw OutOfRange("q outside [1, Q]: " + std::to_string(q));
    GridCache* cache = grids_.get();
    const PanelRule& rule = panel_rule();
    auto grid_at = [&](int ppu) {
        std::lock_guard<std::mutex> lk(cache->mu);
        auto& slot = cache->levels[ppu];
        if (!slot) {
            auto g = std::make_shared<Grid>();
            const i64 panels = static_cast<i64>(std::ceil(X_ * ppu));
            const double h = X_ / panels;
            for (i64 p = 0; p < panels; ++p) {
                double c = (p + 0.5) * h;
                for (std::size_t i = 0; i < rule.x.size(); ++i) {
                    double x = c + 0.5 * h * rule.x[i];
                    double gv = g_weight(1, x, cfg_);
                    g->x.push_back(x);
                    g->gk.push_back(0.5 * h * rule.w[i] * gv);
                }
            }
            slot = g;
        }
        return slot;
    };

    const double y = static_cast<double>(n) / (q * cfg_.Q);
    auto apply = [&](int ppu) {
        auto g = grid_at(ppu);
        double total = 0;
        for (std::size_t i = 0; i < g->x.size(); ++i) total += g->gk[i] * std::cos(kTwoPi * y * g->x[i]);
        return 2 * total;  // even integrand
    };
    // error of the coarser grid from the next halving; the finer value is returned
    int ppu = 4;
    while (ppu < 4 * std::abs(y)) ppu *= 2;
    double coarse = apply(ppu), est = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        ppu *= 2;
        double fine = apply(ppu);
        est = std::abs(fine - coarse);
        if (est <= cfg_.quad_tol) return {fine, est};
        coarse = fine;
    }
    throw QuadratureFailure("x-integral error " + std::to_string(est) + " exceeds quad_tol at q = " +
                            std::to_string(q) + ", n = " + std::to_string(n));
}

double DeltaExpansion::x_integral_exact(i64 q, i64 n) const {
    double s = 0;
    i64 an = std::abs(n);
    if (an != 0)
        for (i64 r = 1; static_cast<double>(an) / (q * r) >= 0.5 * cfg_.Q; ++r)
            s += bump_w(static_cast<double>(an) / (q * r), cfg_) / r;
    return cfg_.Q * (log_integral_ - s);
}

cplx DeltaExpansion::operator()(i64 n) const {
    if (std::abs(n) > n_max(cfg_))
        throw OutOfRange("|n| exceeds Q^2/2: " + std::to_string(n));
    {
        std::lock_guard<std::mutex> lk(grids_->mu);
        auto it = grids_->values.find(n);
        if (it != grids_->values.end()) return it->second;
    }
    const i64 Qi = static_cast<i64>(std::floor(cfg_.Q));
    KahanSum s;
    for (i64 q = 1; q <= Qi; ++q) {
        i64 rq = arith::ramanujan(q, n);
        if (rq == 0) continue;
        double xi = x_integral(q, n).value;
        s.add(static_cast<double>(rq) * (xi / (q * cfg_.Q) + atoms_[q]));
    }
    std::lock_guard<std::mutex> lk(grids_->mu);
    grids_->values[n] = s.value();
    return s.value();
}

double DeltaExpansion::closed_form(i64 n) const {
    const i64 Qi = static_cast<i64>(std::floor(cfg_.Q));
    KahanSum s;
    for (i64 q = 1; q <= Qi; ++q) {
        i64 rq = arith::ramanujan(q, n);
        if (rq == 0) continue;
        s.add(static_cast<double>(rq) * (x_integral_exact(q, n) / (q * cfg_.Q) + atoms_[q]));
    }
    return s.value().real();
}

cplx delta_expand(i64 n, const DeltaConfig& cfg) {
    DeltaExpansion e(cfg);
    return e(n);
}

double weight_V(double u) {
    static const double mass =
        integrate_gk([](double v) { return bump_raw(v); }, kVlo, kVhi, 1e-15, 1e-12).value;
    return bump_raw(u) / mass;
}

double weight_W(double u) {
    const double ramp = 0.1;
    return smooth_step((u - (kVlo - ramp)) / ramp) * smooth_step(((kVhi + ramp) - u) / ramp);
}

DecomposeResult decompose_sum(const CoefficientTable& coeffA, const CoefficientTable& coeffL,
                              double t, i64 N, const DeltaExpansion& expansion, i64 r) {
    if (N < 1 || r < 1) throw InvalidArgs("decompose_sum needs N, r >= 1");
    const i64 lo = N, hi = 2 * N;  // V(n/N) and W(m/N) vanish outside [N, 2N]
    const bool zeroA = coeffA.kind == CoeffKind::ZERO, zeroL = coeffL.kind == CoeffKind::ZERO;
    if (!zeroA && coeffA.n_max() < std::max(hi, r))
        throw InsufficientData("A table covers n <= " + std::to_string(coeffA.n_max()) +
                               ", need " + std::to_string(std::max(hi, r)));
    if (!zeroL && coeffL.n_max() < hi)
        throw InsufficientData("lambda table covers n <= " + std::to_string(coeffL.n_max()) +
                               ", need " + std::to_string(hi));
    if (hi - lo > n_max(expansion.config()))
        throw OutOfRange("N too large for the expansion: need Q^2/2 >= N");

    std::vector<cplx> A(hi + 1), L(hi + 1);
    if (!zeroA) {
        std::map<i64, cplx> vals;
        for (i64 k = 1; k <= coeffA.n_max(); ++k) vals[k] = coeffA.at(k);
        auto row = arith::HeckeRow::self_dual(vals);
        for (i64 n = lo; n <= hi; ++n) A[n] = arith::hecke_expand(r, n, row);
    }
    if (!zeroL)
        for (i64 m = lo; m <= hi; ++m)
            L[m] = coeffL.at(m) * std::polar(1.0, -t * std::log(static_cast<double>(m)));

    std::vector<cplx> dhat(2 * (hi - lo) + 1);
    if (!zeroA && !zeroL)
        for (i64 k = lo - hi; k <= hi - lo; ++k) dhat[k + (hi - lo)] = expansion(k);

    const double Nd = static_cast<double>(N);
    KahanSum direct, decomposed;
    for (i64 n = lo; n <= hi; ++n) {
        double v = weight_V(n / Nd);
        if (v == 0 || A[n] == cplx{}) continue;
        direct.add(A[n] * L[n] * v);
        KahanSum inner;
        for (i64 m = lo; m <= hi; ++m) {
            double w = weight_W(m / Nd);
            if (w == 0) continue;
            inner.add(L[m] * w * dhat[m - n + (hi - lo)]);
        }
        decomposed.add(A[n] * v * inner.value());
    }
    return {direct.value(), decomposed.value()};
}

DecomposeResult decompose_sum(const CoefficientTable& coeffA, const CoefficientTable& coeffL,
                              double t, i64 N, const DeltaConfig& cfg, i64 r) {
    DeltaExpansion e(cfg);
    return decompose_sum(coeffA, coeffL, t, N, e, r);
}

}  // namespace subconvex::delta
