#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "subconvex/coefficient_table.hpp"
#include "subconvex/numeric.hpp"

namespace subconvex::arith {

using i64 = std::int64_t;

struct ExpSumArgs {
    i64 a = 0, b = 0, c = 1;
};

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
// least nonnegative residue
i64 mod(i64 a, i64 q);
bool is_prime(i64 n);
std::vector<std::pair<i64, int>> factorize(i64 n);  // trial division
std::vector<i64> divisors(i64 n);                   // sorted
int mobius(i64 n);
i64 euler_phi(i64 n);
i64 divisor_count(i64 n);
std::vector<i64> primes_up_to(i64 n);

// e(num/den) with the fraction reduced exactly before the float conversion.
cplx e_frac(i64 num, i64 den);

// Table of e(j/c), j = 0..c-1.
std::vector<cplx> roots_of_unity(i64 c);

inline constexpr i64 kMaxModulus = 1000000;

cplx kloosterman(const ExpSumArgs& args);
i64 ramanujan(i64 q, i64 b);
i64 inverse_mod(i64 a, i64 q);  // NotCoprime

i64 d3(i64 n);
std::vector<i64> d3_table(i64 n_max);       // index n -> d3(n), entry 0 unused
std::vector<i64> divisor_table(i64 n_max);  // index n -> d(n)

// A(k,1) and A(1,k) supplied separately; a self-dual row can pass the same map twice.
struct HeckeRow {
    std::map<i64, cplx> row;  // A(k, 1)
    std::map<i64, cplx> col;  // A(1, k)

    static HeckeRow self_dual(const std::map<i64, cplx>& values) { return {values, values}; }
    static HeckeRow d3_surrogate(i64 k_max);
};

cplx hecke_expand(i64 r, i64 n, const HeckeRow& row);  // MissingCoefficient

inline constexpr double kTheta3 = 5.0 / 14.0;

struct RsConfig {
    i64 r = 1;
    double ceiling = 1.0;     // bound on ratio / log(N)^log_power
    double log_power = 0.0;   // 3 for d(n), 2 for d3 (dyadic |A|)
    i64 start = 0;            // first N of the doubling sweep; 0 picks N/16
};

struct RsPoint {
    i64 N = 0;
    double ratio = 0;
    double normalized = 0;  // ratio / log(N)^log_power
};

struct RsReport {
    std::vector<RsPoint> sweep;
    bool violation = false;
    i64 first_violation_N = 0;
};

// GL2 kinds: sum_{n<=N} |lambda(n)|^2 / N.
// GL3 kinds: sum_{N<n<=2N} |A(r,n)| / (r^theta3 N), with A(r,n) by the Hecke relation.
RsReport rs_partial_sum_check(const CoefficientTable& coeffs, i64 N, const RsConfig& cfg = {});

}  // namespace subconvex::arith
