#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "subconvex/coefficient_table.hpp"
#include "subconvex/numeric.hpp"

namespace subconvex::delta {

using i64 = std::int64_t;

// w is a fixed skewed bump exp(-1/s - 1/(2(1-s))), s = (u - Q/2)/(Q/2), on [Q/2, Q],
// scaled to integral 1.
struct DeltaConfig {
    double Q = 50;
    double quad_tol = 1e-8;
    double x_cutoff = 0;  // 0: chosen from the decay of g
    double tail_tol = 1e-12;
};

void validate(const DeltaConfig& cfg);  // InvalidArgs

double bump_w(double u, const DeltaConfig& cfg);

// Regular part of g(q, x): 1 - (Q/|x|) sum_{k>=1} w(kQ/|x|). It does not depend on q,
// equals 1 for |x| < 1 and is even. The rest of g is the atom g_atom(q) * qQ * delta(x).
double g_weight(i64 q, double x, const DeltaConfig& cfg);  // OutOfRange unless 1 <= q <= Q
double g_atom(i64 q, const DeltaConfig& cfg);             // (1/q)(sum_r w(qr)/r - int w(z)/z dz)

i64 n_max(const DeltaConfig& cfg);  // floor(Q^2 / 2); the expansion is exact below it

// Holds the quadrature grid and g on it; reused across many n.
class DeltaExpansion {
public:
    explicit DeltaExpansion(const DeltaConfig& cfg);

    const DeltaConfig& config() const { return cfg_; }
    double x_cutoff() const { return X_; }

    // int_R g(q, x) e(n x / qQ) dx, regular part only, with its error estimate.
    QuadResult<double> x_integral(i64 q, i64 n) const;
    // Same integral in closed form: qQ sum_r (qr)^{-1} (-w(|n|/(qr))) + qQ * int w(z)/z dz.
    double x_integral_exact(i64 q, i64 n) const;

    cplx operator()(i64 n) const;            // delta_expand
    double closed_form(i64 n) const;         // same expansion with exact x-integrals

    struct GridCache;

private:
    DeltaConfig cfg_;
    double X_ = 0;
    double log_integral_ = 0;  // int w(z)/z dz
    std::vector<double> atoms_;
    std::shared_ptr<GridCache> grids_;  // g on composite Kronrod grids, by panels per unit
};

cplx delta_expand(i64 n, const DeltaConfig& cfg);  // QuadratureFailure, OutOfRange

struct DecomposeResult {
    cplx direct;
    cplx decomposed;
    double abs_diff() const { return std::abs(direct - decomposed); }
};

// Weights of the bilinear sum: V a bump on [1.1, 1.9] with integral 1, W equal to 1 there and
// supported in [1, 2].
double weight_V(double u);
double weight_W(double u);

// S_r(N) = sum_n A(r,n) lambda(n) n^{-it} V(n/N), directly and with delta(m - n) replaced by
// its expansion. coeffA holds A(1, n) of a self-dual form.
DecomposeResult decompose_sum(const CoefficientTable& coeffA, const CoefficientTable& coeffL,
                              double t, i64 N, const DeltaExpansion& expansion, i64 r = 1);
DecomposeResult decompose_sum(const CoefficientTable& coeffA, const CoefficientTable& coeffL,
                              double t, i64 N, const DeltaConfig& cfg, i64 r = 1);

}  // namespace subconvex::delta
