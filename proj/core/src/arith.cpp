#include "subconvex/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "subconvex/errors.hpp"

namespace subconvex::arith {

i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

i64 lcm(i64 a, i64 b) { return std::lcm(a, b); }

i64 mod(i64 a, i64 q) {
    i64 r = a % q;
    return r < 0 ? r + q : r;
}

bool is_prime(i64 n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (i64 p = 3; p * p <= n; p += 2)
        if (n % p == 0) return false;
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n < 1) throw InvalidArgs("factorize needs n >= 1, got " + std::to_string(n));
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (p > 10000000) throw InvalidArgs("trial division limit exceeded");
        if (n % p) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> ds{1};
    for (auto [p, k] : factorize(n)) {
        std::size_t m = ds.size();
        i64 pk = 1;
        for (int e = 1; e <= k; ++e) {
            pk *= p;
            for (std::size_t i = 0; i < m; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

int mobius(i64 n) {
    int s = 1;
    for (auto [p, k] : factorize(n)) {
        if (k > 1) return 0;
        s = -s;
    }
    return s;
}

i64 euler_phi(i64 n) {
    i64 r = n;
    for (auto [p, k] : factorize(n)) r = r / p * (p - 1);
    return r;
}

i64 divisor_count(i64 n) {
    i64 r = 1;
    for (auto [p, k] : factorize(n)) r *= k + 1;
    return r;
}

std::vector<i64> primes_up_to(i64 n) {
    std::vector<char> sieve(static_cast<std::size_t>(std::max<i64>(n + 1, 2)), 1);
    std::vector<i64> ps;
    for (i64 i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (i64 j = i * i; j <= n; j += i) sieve[j] = 0;
    }
    return ps;
}

cplx e_frac(i64 num, i64 den) {
    i64 r = mod(num, den);
    if (r == 0) return {1.0, 0.0};
    if (2 * r == den) return {-1.0, 0.0};
    if (4 * r == den) return {0.0, 1.0};
    if (4 * r == 3 * den) return {0.0, -1.0};
    return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

std::vector<cplx> roots_of_unity(i64 c) {
    std::vector<cplx> t(static_cast<std::size_t>(c));
    for (i64 j = 0; j < c; ++j) t[j] = e_frac(j, c);
    return t;
}

namespace {

i64 mulmod(i64 a, i64 b, i64 m) {
    return static_cast<i64>((static_cast<__int128>(a) * b) % m);
}

}  // namespace

i64 inverse_mod(i64 a, i64 q) {
    if (q < 1) throw InvalidArgs("modulus must be positive");
    i64 r0 = mod(a, q), r1 = q, s0 = 1, s1 = 0;
    // extended Euclid on (a mod q, q)
    while (r1 != 0) {
        i64 t = r0 / r1;
        i64 r2 = r0 - t * r1;
        r0 = r1;
        r1 = r2;
        i64 s2 = s0 - t * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) {
        if (q == 1) return 0;
        throw NotCoprime("gcd(" + std::to_string(a) + ", " + std::to_string(q) + ") = " +
                         std::to_string(r0));
    }
    return mod(s0, q);
}

cplx kloosterman(const ExpSumArgs& args) {
    const i64 c = args.c;
    if (c < 1) throw InvalidArgs("Kloosterman modulus must be >= 1");
    if (c > kMaxModulus) throw InvalidArgs("Kloosterman modulus above cap");
    const i64 a = mod(args.a, c), b = mod(args.b, c);
    KahanSum acc;
    for (i64 d = 0; d < c; ++d) {
        if (std::gcd(d, c) != 1) continue;
        i64 db = inverse_mod(d, c);
        i64 idx = (mulmod(a, d, c) + mulmod(b, db, c)) % c;
        acc.add(e_frac(idx, c));
    }
    return acc.value();
}

i64 ramanujan(i64 q, i64 b) {
    if (q < 1) throw InvalidArgs("Ramanujan sum modulus must be >= 1");
    i64 g = std::gcd(q, mod(b, q));
    if (g == 0) g = q;
    i64 s = 0;
    for (i64 d : divisors(g)) s += d * mobius(q / d);
    return s;
}

i64 d3(i64 n) {
    if (n < 1) throw InvalidArgs("d3 needs n >= 1");
    i64 r = 1;
    for (auto [p, k] : factorize(n)) r *= static_cast<i64>(k + 1) * (k + 2) / 2;
    return r;
}

std::vector<i64> d3_table(i64 n_max) {
    // d3 = 1 * 1 * 1: convolve the divisor counts with 1
    auto d = divisor_table(n_max);
    std::vector<i64> t(static_cast<std::size_t>(n_max + 1), 0);
    for (i64 a = 1; a <= n_max; ++a)
        for (i64 m = a; m <= n_max; m += a) t[m] += d[m / a];
    return t;
}

std::vector<i64> divisor_table(i64 n_max) {
    std::vector<i64> t(static_cast<std::size_t>(n_max + 1), 0);
    for (i64 a = 1; a <= n_max; ++a)
        for (i64 m = a; m <= n_max; m += a) ++t[m];
    return t;
}

HeckeRow HeckeRow::d3_surrogate(i64 k_max) {
    std::map<i64, cplx> v;
    auto t = d3_table(k_max);
    for (i64 k = 1; k <= k_max; ++k) v[k] = static_cast<double>(t[k]);
    return self_dual(v);
}

cplx hecke_expand(i64 r, i64 n, const HeckeRow& row) {
    if (r < 1 || n < 1) throw InvalidArgs("hecke_expand needs r, n >= 1");
    cplx s = 0;
    for (i64 d : divisors(std::gcd(r, n))) {
        int mu = mobius(d);
        if (mu == 0) continue;
        auto ir = row.row.find(r / d);
        if (ir == row.row.end())
            throw MissingCoefficient("A(" + std::to_string(r / d) + ",1) not supplied");
        auto ic = row.col.find(n / d);
        if (ic == row.col.end())
            throw MissingCoefficient("A(1," + std::to_string(n / d) + ") not supplied");
        s += static_cast<double>(mu) * ir->second * ic->second;
    }
    return s;
}

RsReport rs_partial_sum_check(const CoefficientTable& coeffs, i64 N, const RsConfig& cfg) {
    if (N < 2) throw InvalidArgs("rs_partial_sum_check needs N >= 2");
    const bool gl3 = coeffs.kind == CoeffKind::GL3_D3_SURROGATE;
    const i64 need = gl3 ? std::max<i64>(2 * N, cfg.r) : N;
    if (coeffs.kind != CoeffKind::ZERO && coeffs.n_max() < need)
        throw InsufficientData("table covers n <= " + std::to_string(coeffs.n_max()) +
                               ", check needs " + std::to_string(need));

    auto coef = [&](i64 n) -> cplx {
        return coeffs.kind == CoeffKind::ZERO ? cplx{} : coeffs.values[n - 1];
    };
    auto A = [&](i64 r, i64 n) -> cplx {
        cplx s = 0;
        for (i64 d : divisors(std::gcd(r, n))) {
            int mu = mobius(d);
            if (mu) s += static_cast<double>(mu) * coef(r / d) * coef(n / d);
        }
        return s;
    };

    RsReport rep;
    i64 start = cfg.start > 0 ? cfg.start : std::max<i64>(2, N / 16);
    std::vector<i64> Ns;
    for (i64 M = start; M < N; M *= 2) Ns.push_back(M);
    Ns.push_back(N);

    for (i64 M : Ns) {
        double ratio = 0;
        if (coeffs.kind != CoeffKind::ZERO) {
            if (gl3) {
                double s = 0;
                for (i64 n = M + 1; n <= 2 * M; ++n) s += std::abs(A(cfg.r, n));
                ratio = s / (std::pow(static_cast<double>(cfg.r), kTheta3) * M);
            } else {
                double s = 0;
                for (i64 n = 1; n <= M; ++n) s += std::norm(coef(n));
                ratio = s / M;
            }
        }
        double norm = ratio / std::pow(std::log(static_cast<double>(M)), cfg.log_power);
        rep.sweep.push_back({M, ratio, norm});
        if (norm > cfg.ceiling && !rep.violation) {
            rep.violation = true;
            rep.first_violation_N = M;
        }
    }
    return rep;
}

}  // namespace subconvex::arith
