#pragma once

#include <cstdint>
#include <vector>

#include "subconvex/numeric.hpp"

namespace subconvex::charsum {

using i64 = std::int64_t;

// Indexes C^{sign1}(n2, n1, r, m, q); `sign` is the sign of n2 inside the
// Kloosterman sum S(-r abar, sign*n2; rq/n1).
struct CharSumArgs {
    i64 n2 = 1, n1 = 1, r = 1, m = 1, q = 1;
    int sign = 1, sign1 = 1;
};

struct FrakCArgs {
    i64 n = 0, q1 = 1, q2 = 1, q2p = 1, m = 1, mp = 1, n1 = 1, r = 1;
    int sign = 1, sign1 = 1;
};

cplx char_sum_C_oracle(const CharSumArgs& a);
cplx char_sum_C_reduced(const CharSumArgs& a);

// C(beta) for beta = 0 .. rq/n1 - 1 (the sum is periodic in n2 with that period).
std::vector<cplx> char_sum_C_period(i64 n1, i64 r, i64 m, i64 q, int sign, int sign1);

i64 frak_modulus(const FrakCArgs& a);  // r q1 q2 q2' / n1
void validate(const FrakCArgs& a);      // InvalidArgs

// Direct evaluation: beta-average over the full modulus, each C computed by the oracle.
cplx frak_C_direct(const FrakCArgs& a);
// Same quantity from the period vectors of C; what sweeps use.
cplx frak_C(const FrakCArgs& a);
// frak_C at every n in `ns`, sharing the period vectors.
std::vector<cplx> frak_C_spectrum(const FrakCArgs& a, const std::vector<i64>& ns);

double lemma_c_bound(const FrakCArgs& a, double slack = 1.0);

struct SweepConfig {
    i64 max_modulus = 400;
    i64 max_r = 4;
    i64 max_n1 = 4;
    i64 m_max = 4;          // m, m' in [1, m_max]
    i64 n_range = 10;       // n in [-n_range, n_range]
    double slack = 1.0;
    double zero_tol = 1e-6;
    double rel_tol = 1e-6;
    unsigned workers = 1;
};

struct SweepFailure {
    FrakCArgs args;
    double value = 0;
    double bound = 0;
    const char* kind = "";
};

struct SweepReport {
    i64 configurations = 0;
    i64 evaluations = 0;
    i64 zero_checks = 0;
    i64 bound_checks = 0;
    double worst_ratio = 0;  // max |frak_C| / majorant over n != 0
    double worst_zero = 0;   // max |frak_C(0)| when q2 != q2'
    std::vector<SweepFailure> failures;
};

// Enumerates (r, n1, q1, q2, q2') with q1 | (n1 r)^infinity, the FrakCArgs
// invariants and composite modulus <= max_modulus.
std::vector<FrakCArgs> sweep_configurations(const SweepConfig& cfg);
SweepReport run_frak_sweep(const SweepConfig& cfg);

struct ReductionReport {
    i64 cases = 0;
    double max_abs_diff = 0;
    std::vector<CharSumArgs> failures;
};

// Oracle vs reduced form over q <= q_max, r <= r_max, n1 | qr, n2, m <= nm_max, both signs.
ReductionReport run_reduction_sweep(i64 q_max, i64 r_max, i64 nm_max, double tol, unsigned workers);

}  // namespace subconvex::charsum
