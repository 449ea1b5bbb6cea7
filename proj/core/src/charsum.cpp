#include "subconvex/charsum.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <string>

#include "subconvex/arith.hpp"
#include "subconvex/errors.hpp"

namespace subconvex::charsum {

using arith::divisors;
using arith::e_frac;
using arith::mod;
using arith::mobius;

namespace {

void check(const CharSumArgs& a) {
    if (a.q < 1 || a.r < 1 || a.n1 < 1)
        throw InvalidArgs("q, r, n1 must be positive");
    if ((a.q * a.r) % a.n1 != 0)
        throw InvalidArgs("n1 = " + std::to_string(a.n1) + " does not divide qr = " +
                          std::to_string(a.q * a.r));
    if ((a.sign != 1 && a.sign != -1) || (a.sign1 != 1 && a.sign1 != -1))
        throw InvalidArgs("signs must be +1 or -1");
}

// inverse table mod c; 0 marks non-units
std::vector<i64> inverses(i64 c) {
    std::vector<i64> inv(static_cast<std::size_t>(c), 0);
    if (c == 1) {
        inv[0] = 0;
        return inv;
    }
    for (i64 x = 1; x < c; ++x)
        if (std::gcd(x, c) == 1) inv[x] = arith::inverse_mod(x, c);
    return inv;
}

bool is_unit(i64 x, i64 c) { return std::gcd(mod(x, c), c) == 1; }

}  // namespace

cplx char_sum_C_oracle(const CharSumArgs& a) {
    check(a);
    const i64 c = a.r * a.q / a.n1;
    KahanSum acc;
    for (i64 x = 0; x < a.q; ++x) {
        if (!is_unit(x, a.q)) continue;
        i64 xb = a.q == 1 ? 0 : arith::inverse_mod(x, a.q);
        cplx outer = e_frac(a.sign1 * xb * a.m, a.q);
        cplx S = arith::kloosterman({-a.r * xb, a.sign * a.n2, c});
        acc.add(outer * S);
    }
    return acc.value();
}

cplx char_sum_C_reduced(const CharSumArgs& a) {
    check(a);
    const i64 c = a.r * a.q / a.n1;
    auto inv = inverses(c);
    KahanSum acc;
    for (i64 d : divisors(a.q)) {
        int mu = mobius(a.q / d);
        if (mu == 0) continue;
        KahanSum inner;
        for (i64 al = 0; al < c; ++al) {
            if (!is_unit(al, c)) continue;
            if (mod(a.n1 * al - a.sign1 * a.m, d) != 0) continue;
            inner.add(e_frac(a.sign * a.n2 * inv[al], c));
        }
        acc.add(static_cast<double>(d * mu) * inner.value());
    }
    return acc.value();
}

std::vector<cplx> char_sum_C_period(i64 n1, i64 r, i64 m, i64 q, int sign, int sign1) {
    check({1, n1, r, m, q, sign, sign1});
    const i64 c = r * q / n1;
    auto inv = inverses(c);
    auto roots = arith::roots_of_unity(c);
    // weight at j = alpha-bar is the Ramanujan sum R_q(n1 alpha - sign1 m)
    std::vector<double> f(static_cast<std::size_t>(c), 0.0);
    for (i64 al = 0; al < c; ++al) {
        if (!is_unit(al, c)) continue;
        f[inv[al]] = static_cast<double>(arith::ramanujan(q, n1 * al - sign1 * m));
    }
    std::vector<cplx> out(static_cast<std::size_t>(c));
    for (i64 beta = 0; beta < c; ++beta) {
        KahanSum s;
        i64 step = mod(sign * beta, c);
        i64 idx = 0;
        for (i64 j = 0; j < c; ++j, idx = (idx + step) % c)
            if (f[j] != 0.0) s.add(f[j] * roots[idx]);
        out[beta] = s.value();
    }
    return out;
}

i64 frak_modulus(const FrakCArgs& a) { return a.r * a.q1 * a.q2 * a.q2p / a.n1; }

void validate(const FrakCArgs& a) {
    if (a.q1 < 1 || a.q2 < 1 || a.q2p < 1 || a.m < 1 || a.mp < 1 || a.n1 < 1 || a.r < 1)
        throw InvalidArgs("all moduli and m, m' must be positive");
    if (std::gcd(a.q2, a.n1 * a.r) != 1) throw InvalidArgs("gcd(q2, n1 r) != 1");
    if (std::gcd(a.q2p, a.n1 * a.r) != 1) throw InvalidArgs("gcd(q2', n1 r) != 1");
    if (a.q1 % (a.n1 / std::gcd(a.n1, a.r)) != 0) throw InvalidArgs("n1/(n1,r) does not divide q1");
    if ((a.sign != 1 && a.sign != -1) || (a.sign1 != 1 && a.sign1 != -1))
        throw InvalidArgs("signs must be +1 or -1");
}

cplx frak_C_direct(const FrakCArgs& a) {
    validate(a);
    const i64 M = frak_modulus(a);
    KahanSum acc;
    for (i64 beta = 0; beta < M; ++beta) {
        cplx c1 = char_sum_C_oracle({beta, a.n1, a.r, a.m, a.q1 * a.q2, a.sign, a.sign1});
        cplx c2 = char_sum_C_oracle({beta, a.n1, a.r, a.mp, a.q1 * a.q2p, a.sign, a.sign1});
        acc.add(c1 * std::conj(c2) * e_frac(a.n * beta, M));
    }
    return acc.value() / static_cast<double>(M);
}

namespace {

std::vector<cplx> spectrum_from_periods(const FrakCArgs& a, const std::vector<cplx>& C1,
                                        const std::vector<cplx>& C2, const std::vector<i64>& ns) {
    const i64 M = frak_modulus(a);
    const i64 c1 = static_cast<i64>(C1.size()), c2 = static_cast<i64>(C2.size());
    auto roots = arith::roots_of_unity(M);
    std::vector<cplx> prod(static_cast<std::size_t>(M));
    for (i64 beta = 0; beta < M; ++beta) prod[beta] = C1[beta % c1] * std::conj(C2[beta % c2]);
    std::vector<cplx> out;
    out.reserve(ns.size());
    for (i64 n : ns) {
        KahanSum s;
        i64 step = mod(n, M), idx = 0;
        for (i64 beta = 0; beta < M; ++beta, idx = (idx + step) % M) s.add(prod[beta] * roots[idx]);
        out.push_back(s.value() / static_cast<double>(M));
    }
    return out;
}

}  // namespace

std::vector<cplx> frak_C_spectrum(const FrakCArgs& a, const std::vector<i64>& ns) {
    validate(a);
    auto C1 = char_sum_C_period(a.n1, a.r, a.m, a.q1 * a.q2, a.sign, a.sign1);
    auto C2 = char_sum_C_period(a.n1, a.r, a.mp, a.q1 * a.q2p, a.sign, a.sign1);
    return spectrum_from_periods(a, C1, C2, ns);
}

cplx frak_C(const FrakCArgs& a) { return frak_C_spectrum(a, {a.n})[0]; }

double lemma_c_bound(const FrakCArgs& a, double slack) {
    validate(a);
    // the lemma splits q = q1 q2 with q1 supported on primes of n1 r
    i64 rest = a.q1, base = a.n1 * a.r;
    for (i64 g = std::gcd(rest, base); g > 1; g = std::gcd(rest, base)) rest /= g;
    if (rest != 1) throw InvalidArgs("q1 must divide a power of n1 r");

    if (a.n == 0) {
        if (a.q2 != a.q2p) return 0.0;
        const i64 q = a.q1 * a.q2;
        double s = 0;
        auto ds = divisors(q);
        for (i64 d : ds)
            for (i64 dp : ds) {
                i64 g = std::gcd(d, dp);
                if ((a.m - a.mp) % g == 0) s += static_cast<double>(g * q * a.r);
            }
        return slack * s;
    }

    const i64 g22 = std::gcd(a.q2, a.q2p);
    if (a.n % g22 != 0) return 0.0;

    double s1 = 0;
    auto d1s = divisors(a.q1);
    for (i64 d1 : d1s)
        for (i64 d1p : d1s) {
            i64 g1 = std::gcd(d1, a.n1), g1p = std::gcd(d1p, a.n1);
            double x = (a.m % g1 == 0) ? static_cast<double>(d1p * g1) : 0.0;
            double y = (a.mp % g1p == 0) ? static_cast<double>(d1 * g1p) : 0.0;
            s1 += std::min(x, y);
        }
    s1 *= static_cast<double>(a.r * a.q1 / a.n1);

    const i64 e2 = a.sign * a.n1 * a.q2p + a.sign1 * a.m * a.n;
    const i64 e2p = -a.sign * a.n1 * a.q2 + a.sign1 * a.mp * a.n;
    double s2 = 0;
    // gcd(q, 0) = q covers the e2 = 0 case
    for (i64 d2 : divisors(std::gcd(a.q2, std::abs(e2))))
        for (i64 d2p : divisors(std::gcd(a.q2p, std::abs(e2p)))) {
            double x = static_cast<double>(a.q2) / static_cast<double>(std::lcm(a.q2 / g22, d2));
            double y = static_cast<double>(a.q2p) / static_cast<double>(std::lcm(a.q2p / g22, d2p));
            s2 += static_cast<double>(d2 * d2p) * std::min(x, y);
        }
    return slack * s1 * s2;
}

std::vector<FrakCArgs> sweep_configurations(const SweepConfig& cfg) {
    std::vector<FrakCArgs> out;
    for (i64 r = 1; r <= cfg.max_r; ++r)
        for (i64 n1 = 1; n1 <= cfg.max_n1; ++n1) {
            const i64 base = n1 * r;
            for (i64 q1 = 1; q1 <= cfg.max_modulus * n1; ++q1) {
                if (q1 % (n1 / std::gcd(n1, r)) != 0) continue;
                i64 rest = q1;
                for (i64 g = std::gcd(rest, base); g > 1; g = std::gcd(rest, base)) rest /= g;
                if (rest != 1) continue;
                if (r * q1 > cfg.max_modulus * n1) break;
                for (i64 q2 = 1; r * q1 * q2 <= cfg.max_modulus * n1; ++q2) {
                    if (std::gcd(q2, base) != 1) continue;
                    for (i64 q2p = 1; r * q1 * q2 * q2p <= cfg.max_modulus * n1; ++q2p) {
                        if (std::gcd(q2p, base) != 1) continue;
                        if ((r * q1 * q2 * q2p) % n1 != 0) continue;
                        FrakCArgs a;
                        a.r = r;
                        a.n1 = n1;
                        a.q1 = q1;
                        a.q2 = q2;
                        a.q2p = q2p;
                        out.push_back(a);
                    }
                }
            }
        }
    return out;
}

SweepReport run_frak_sweep(const SweepConfig& cfg) {
    auto configs = sweep_configurations(cfg);
    std::vector<i64> ns;
    for (i64 n = -cfg.n_range; n <= cfg.n_range; ++n) ns.push_back(n);

    std::vector<SweepReport> parts(configs.size());
    parallel_for(configs.size(), cfg.workers, [&](std::size_t idx) {
        const FrakCArgs base = configs[idx];
        SweepReport& rep = parts[idx];
        for (int sign : {1, -1})
            for (int sign1 : {1, -1}) {
                std::vector<std::vector<cplx>> P1, P2;
                for (i64 m = 1; m <= cfg.m_max; ++m) {
                    P1.push_back(char_sum_C_period(base.n1, base.r, m, base.q1 * base.q2, sign, sign1));
                    P2.push_back(base.q2 == base.q2p
                                     ? P1.back()
                                     : char_sum_C_period(base.n1, base.r, m, base.q1 * base.q2p, sign,
                                                         sign1));
                }
                for (i64 m = 1; m <= cfg.m_max; ++m)
                    for (i64 mp = 1; mp <= cfg.m_max; ++mp) {
                        FrakCArgs a = base;
                        a.m = m;
                        a.mp = mp;
                        a.sign = sign;
                        a.sign1 = sign1;
                        auto vals = spectrum_from_periods(a, P1[m - 1], P2[mp - 1], ns);
                        for (std::size_t k = 0; k < ns.size(); ++k) {
                            a.n = ns[k];
                            double v = std::abs(vals[k]);
                            ++rep.evaluations;
                            if (a.n == 0) {
                                if (a.q2 != a.q2p) {
                                    ++rep.zero_checks;
                                    rep.worst_zero = std::max(rep.worst_zero, v);
                                    if (v >= cfg.zero_tol) rep.failures.push_back({a, v, 0, "zero-frequency"});
                                }
                                continue;
                            }
                            double b = lemma_c_bound(a, cfg.slack);
                            ++rep.bound_checks;
                            if (b > 0)
                                rep.worst_ratio = std::max(rep.worst_ratio, v / b);
                            else if (v > cfg.zero_tol)
                                rep.worst_ratio = std::max(rep.worst_ratio, 1e300);
                            if (v > b * (1 + cfg.rel_tol) + (b == 0 ? cfg.zero_tol : 0.0))
                                rep.failures.push_back({a, v, b, "majorant"});
                        }
                    }
            }
    });

    SweepReport total;
    total.configurations = static_cast<i64>(configs.size());
    for (auto& p : parts) {
        total.evaluations += p.evaluations;
        total.zero_checks += p.zero_checks;
        total.bound_checks += p.bound_checks;
        total.worst_ratio = std::max(total.worst_ratio, p.worst_ratio);
        total.worst_zero = std::max(total.worst_zero, p.worst_zero);
        total.failures.insert(total.failures.end(), p.failures.begin(), p.failures.end());
    }
    return total;
}

ReductionReport run_reduction_sweep(i64 q_max, i64 r_max, i64 nm_max, double tol, unsigned workers) {
    struct Cell {
        i64 q, r, n1;
    };
    std::vector<Cell> cells;
    for (i64 q = 1; q <= q_max; ++q)
        for (i64 r = 1; r <= r_max; ++r)
            for (i64 n1 : divisors(q * r)) cells.push_back({q, r, n1});

    std::vector<ReductionReport> parts(cells.size());
    parallel_for(cells.size(), workers, [&](std::size_t idx) {
        const auto [q, r, n1] = cells[idx];
        const i64 c = r * q / n1;
        auto invc = inverses(c);
        auto rootc = arith::roots_of_unity(c);
        auto rootq = arith::roots_of_unity(q);
        std::vector<i64> units;
        for (i64 x = 0; x < q; ++x)
            if (is_unit(x, q)) units.push_back(x);
        ReductionReport& rep = parts[idx];
        for (int sign : {1, -1}) {
            // oracle side: S(-r abar, sign n2; c) directly, per unit a and n2
            std::vector<std::vector<cplx>> S(units.size(), std::vector<cplx>(nm_max + 1));
            for (std::size_t u = 0; u < units.size(); ++u) {
                i64 ab = q == 1 ? 0 : arith::inverse_mod(units[u], q);
                i64 x = mod(-r * ab, c);
                for (i64 n2 = 1; n2 <= nm_max; ++n2) {
                    i64 y = mod(sign * n2, c);
                    KahanSum s;
                    for (i64 d = 0; d < c; ++d) {
                        if (c > 1 && invc[d] == 0) continue;
                        s.add(rootc[(x * d + y * invc[d]) % c]);
                    }
                    S[u][n2] = s.value();
                }
            }
            for (int sign1 : {1, -1})
                for (i64 m = 1; m <= nm_max; ++m)
                    for (i64 n2 = 1; n2 <= nm_max; ++n2) {
                        KahanSum o;
                        for (std::size_t u = 0; u < units.size(); ++u) {
                            i64 ab = q == 1 ? 0 : arith::inverse_mod(units[u], q);
                            o.add(rootq[mod(sign1 * ab * m, q)] * S[u][n2]);
                        }
                        CharSumArgs a{n2, n1, r, m, q, sign, sign1};
                        // reduced side with the same tables
                        KahanSum red;
                        for (i64 d : divisors(q)) {
                            int mu = mobius(q / d);
                            if (mu == 0) continue;
                            KahanSum in;
                            for (i64 al = 0; al < c; ++al) {
                                if (c > 1 && invc[al] == 0) continue;
                                if (mod(n1 * al - sign1 * m, d) != 0) continue;
                                in.add(rootc[mod(sign * n2 * invc[al], c)]);
                            }
                            red.add(static_cast<double>(d * mu) * in.value());
                        }
                        double diff = std::abs(o.value() - red.value());
                        ++rep.cases;
                        rep.max_abs_diff = std::max(rep.max_abs_diff, diff);
                        if (diff > tol) rep.failures.push_back(a);
                    }
        }
    });
    ReductionReport total;
    for (auto& p : parts) {
        total.cases += p.cases;
        total.max_abs_diff = std::max(total.max_abs_diff, p.max_abs_diff);
        total.failures.insert(total.failures.end(), p.failures.begin(), p.failures.end());
    }
    return total;
}

}  // namespace subconvex::charsum
