#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "subconvex/special.hpp"

namespace subconvex::ledger {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& r);  // "27/20", "1", "-2/7"
Rational parse_rational(const std::string& s);  // "3/5", "0.6" is rejected; ParseError

// Exponents over the symbols N, T, Tp (= |T'|), K, r. Missing symbols are 0.
class ExponentVector {
public:
    ExponentVector() = default;
    ExponentVector(std::initializer_list<std::pair<const std::string, Rational>> init);

    Rational get(const std::string& sym) const;
    void set(const std::string& sym, const Rational& v);
    const std::map<std::string, Rational>& exponents() const { return e_; }

    ExponentVector operator+(const ExponentVector& o) const;  // product of terms
    ExponentVector operator-(const ExponentVector& o) const;  // quotient
    bool operator==(const ExponentVector& o) const { return e_ == o.e_; }

    std::string describe() const;

private:
    std::map<std::string, Rational> e_;  // zero entries are never stored
};

struct Term {
    std::string label;
    ExponentVector exps;
    std::string group;  // which bound the term comes from
};

struct TermLedger {
    std::vector<Term> terms;
};

// The five terms left after the final merge (r stands for its upper limit R).
TermLedger build_ledger();
// The twelve terms collected before the merge: three zero-frequency, nine non-zero.
TermLedger build_collected_ledger();
// The sixteen terms as they appear in the individual zero / non-zero frequency bounds.
TermLedger build_raw_ledger();

// K = |T'|^k T^j
struct KChoice {
    Rational k{0}, j{0};
    Rational t_exponent(const Rational& a) const { return k * a + j; }
};

// |T'| = T^a. Exponent of R from the two branches of its definition.
Rational R_exponent(const Rational& a);
// Lower limit for the K exponent (in powers of T) and the upper limit (1 + a)/2.
Rational K_floor(const Rational& a);
Rational K_ceiling(const Rational& a);

// T-exponent of one term at |T'| = T^a, K as given and r = R.
Rational term_exponent(const ExponentVector& v, const Rational& a, const KChoice& K);

// Max over terms. ConstraintViolated when K is outside [K_floor, K_ceiling];
// RegimeViolation for a outside [3/5, 1].
Rational evaluate_sup(const TermLedger& ledger, const Rational& a, const KChoice& K);

KChoice paper_K(const Rational& a);
// Exponent of the theorem's bound for |T'| = T^a: 7/8 + 19a/40 or 57/56 + 17a/56.
Rational theorem_exponent(const Rational& a);
Rational convexity_exponent(const Rational& a);  // 3/4 + 3a/4

struct OptimizeResult {
    Rational a;
    KChoice K;
    Rational sup;
    Rational paper_sup;
    bool paper_match = false;  // the paper's K attains the optimum
    long long grid_points = 0;
};

// Grid search over k in [0, 2], j in [-1, 1] with step 1/denominator.
// InfeasibleConstraints when no grid point is admissible.
OptimizeResult optimize_K(const TermLedger& ledger, const Rational& a, long long denominator = 280);

struct AfeCutoffs {
    double N_max = 0;
    double R = 0;
    Rational R_tp_exp, R_t_exp;  // R = |T'|^x T^y
};

// RegimeViolation when |T'| < T^{3/5}.
AfeCutoffs afe_cutoffs(const special::SpectralParams& p, long long r);

struct DominationReport {
    std::vector<std::string> undominated;  // raw terms no canonical term dominates
    std::map<std::string, std::string> witness;  // "group: label" -> canonical label
};

// Each term of `raw` must be at most some term of `canonical` on the region
// 3/5 <= a <= 1, 0 <= kappa <= (1 + a)/2, 0 <= log r <= log R (checked at the vertices).
DominationReport check_domination(const TermLedger& raw, const TermLedger& canonical);

}  // namespace subconvex::ledger
