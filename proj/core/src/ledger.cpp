#include "subconvex/ledger.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "subconvex/errors.hpp"

namespace subconvex::ledger {

namespace {

const std::set<std::string> kSymbols = {"N", "T", "Tp", "K", "r"};

Rational R(long long n, long long d = 1) { return Rational(n, d); }

}  // namespace

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
    auto parse_int = [&](const std::string& part) -> long long {
        if (part.empty()) throw ParseError("bad rational: '" + s + "'");
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(part, &pos);
        } catch (const std::exception&) {
            throw ParseError("bad rational: '" + s + "'");
        }
        if (pos != part.size()) throw ParseError("bad rational: '" + s + "'");
        return v;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    long long d = parse_int(s.substr(slash + 1));
    if (d == 0) throw ParseError("zero denominator: '" + s + "'");
    return Rational(parse_int(s.substr(0, slash)), d);
}

ExponentVector::ExponentVector(std::initializer_list<std::pair<const std::string, Rational>> init) {
    for (const auto& [k, v] : init) set(k, v);
}

Rational ExponentVector::get(const std::string& sym) const {
    auto it = e_.find(sym);
    return it == e_.end() ? Rational(0) : it->second;
}

void ExponentVector::set(const std::string& sym, const Rational& v) {
    if (!kSymbols.count(sym)) throw InvalidArgs("unknown exponent symbol " + sym);
    if (v.numerator() == 0)
        e_.erase(sym);
    else
        e_[sym] = v;
}

ExponentVector ExponentVector::operator+(const ExponentVector& o) const {
    ExponentVector r = *this;
    for (const auto& [k, v] : o.e_) r.set(k, r.get(k) + v);
    return r;
}

ExponentVector ExponentVector::operator-(const ExponentVector& o) const {
    ExponentVector r = *this;
    for (const auto& [k, v] : o.e_) r.set(k, r.get(k) - v);
    return r;
}

std::string ExponentVector::describe() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : e_) {
        if (!first) os << " ";
        os << k << "^" << to_string(v);
        first = false;
    }
    return first ? "1" : os.str();
}

namespace {

Term term(std::string label, ExponentVector v, std::string group) {
    return {std::move(label), std::move(v), std::move(group)};
}

}  // namespace

TermLedger build_ledger() {
    return {{
        term("r^{1/2}K^{3/2}T/|T'|", {{"r", R(1, 2)}, {"K", R(3, 2)}, {"T", R(1)}, {"Tp", R(-1)}}, "merged"),
        term("r^{1/2}T^{1/2}|T'|^{1/2}", {{"r", R(1, 2)}, {"T", R(1, 2)}, {"Tp", R(1, 2)}}, "merged"),
        term("T^{7/8}|T'|^{7/8}/K^{1/2}", {{"T", R(7, 8)}, {"Tp", R(7, 8)}, {"K", R(-1, 2)}}, "merged"),
        term("K^{3/4}T^{7/8}/|T'|^{1/8}", {{"K", R(3, 4)}, {"T", R(7, 8)}, {"Tp", R(-1, 8)}}, "merged"),
        term("T^{11/8}K^{5/4}/|T'|^{9/8}", {{"T", R(11, 8)}, {"K", R(5, 4)}, {"Tp", R(-9, 8)}}, "merged"),
    }};
}

TermLedger build_collected_ledger() {
    return {{
        term("r^{1/2}K^{3/2}T/|T'|", {{"r", R(1, 2)}, {"K", R(3, 2)}, {"T", R(1)}, {"Tp", R(-1)}}, "zero"),
        term("r^{1/2}T^{1/2}|T'|^{1/2}", {{"r", R(1, 2)}, {"T", R(1, 2)}, {"Tp", R(1, 2)}}, "zero"),
        term("T^{3/8}|T'|^{3/8}K^{3/4}", {{"T", R(3, 8)}, {"Tp", R(3, 8)}, {"K", R(3, 4)}}, "zero"),
        term("T^{7/8}|T'|^{7/8}/K^{1/2}", {{"T", R(7, 8)}, {"Tp", R(7, 8)}, {"K", R(-1, 2)}}, "nonzero"),
        term("T^{3/4}|T'|^{3/4}/K^{1/4}", {{"T", R(3, 4)}, {"Tp", R(3, 4)}, {"K", R(-1, 4)}}, "nonzero"),
        term("T^{5/8}|T'|^{5/8}", {{"T", R(5, 8)}, {"Tp", R(5, 8)}}, "nonzero"),
        term("T^{1/2}|T'|^{1/2}K^{1/4}", {{"T", R(1, 2)}, {"Tp", R(1, 2)}, {"K", R(1, 4)}}, "nonzero"),
        term("K^{3/4}T^{7/8}/|T'|^{1/8}", {{"K", R(3, 4)}, {"T", R(7, 8)}, {"Tp", R(-1, 8)}}, "nonzero"),
        term("T^{3/8}|T'|^{3/8}K^{3/4}", {{"T", R(3, 8)}, {"Tp", R(3, 8)}, {"K", R(3, 4)}}, "nonzero"),
        term("T^{3/4}K/|T'|^{1/4}", {{"T", R(3, 4)}, {"K", R(1)}, {"Tp", R(-1, 4)}}, "nonzero"),
        term("T^{1/4}|T'|^{1/4}K", {{"T", R(1, 4)}, {"Tp", R(1, 4)}, {"K", R(1)}}, "nonzero"),
        term("T^{11/8}K^{5/4}/|T'|^{9/8}", {{"T", R(11, 8)}, {"K", R(5, 4)}, {"Tp", R(-9, 8)}}, "nonzero"),
    }};
}

TermLedger build_raw_ledger() {
    return {{
        // zero frequency, small NX/PQ
        term("r^{1/2}K^{3/2}T^{1/2}/|T'|^{1/2}", {{"r", R(1, 2)}, {"K", R(3, 2)}, {"T", R(1, 2)}, {"Tp", R(-1, 2)}}, "zero-1"),
        term("r^{1/2}T^{1/2}|T'|^{1/2}", {{"r", R(1, 2)}, {"T", R(1, 2)}, {"Tp", R(1, 2)}}, "zero-1"),
        term("T^{3/8}|T'|^{3/8}K^{3/4}", {{"T", R(3, 8)}, {"Tp", R(3, 8)}, {"K", R(3, 4)}}, "zero-1"),
        // zero frequency, large NX/PQ
        term("r^{1/2}K^{3/2}T/|T'|", {{"r", R(1, 2)}, {"K", R(3, 2)}, {"T", R(1)}, {"Tp", R(-1)}}, "zero-2"),
        term("T^{3/8}|T'|^{3/8}K^{3/4}", {{"T", R(3, 8)}, {"Tp", R(3, 8)}, {"K", R(3, 4)}}, "zero-2"),
        // non-zero frequencies, small NX/PQ
        term("T^{7/8}|T'|^{7/8}/K^{1/2}", {{"T", R(7, 8)}, {"Tp", R(7, 8)}, {"K", R(-1, 2)}}, "nonzero-11"),
        term("T^{3/4}|T'|^{3/4}/K^{1/4}", {{"T", R(3, 4)}, {"Tp", R(3, 4)}, {"K", R(-1, 4)}}, "nonzero-11"),
        term("K^{3/4}T^{7/8}/|T'|^{1/8}", {{"K", R(3, 4)}, {"T", R(7, 8)}, {"Tp", R(-1, 8)}}, "nonzero-21"),
        term("T^{7/8}|T'|^{7/8}/K^{3/4}", {{"T", R(7, 8)}, {"Tp", R(7, 8)}, {"K", R(-3, 4)}}, "nonzero-21"),
        term("T^{3/4}K/|T'|^{1/4}", {{"T", R(3, 4)}, {"K", R(1)}, {"Tp", R(-1, 4)}}, "nonzero-21"),
        term("T^{3/4}|T'|^{3/4}/K^{1/2}", {{"T", R(3, 4)}, {"Tp", R(3, 4)}, {"K", R(-1, 2)}}, "nonzero-21"),
        term("T^{3/8}|T'|^{3/8}K^{3/4}", {{"T", R(3, 8)}, {"Tp", R(3, 8)}, {"K", R(3, 4)}}, "nonzero-22"),
        term("T^{1/4}|T'|^{1/4}K", {{"T", R(1, 4)}, {"Tp", R(1, 4)}, {"K", R(1)}}, "nonzero-22"),
        // non-zero frequencies, large NX/PQ
        term("T^{11/8}K^{5/4}/|T'|^{9/8}", {{"T", R(11, 8)}, {"K", R(5, 4)}, {"Tp", R(-9, 8)}}, "nonzero-3"),
        term("T^{3/8}|T'|^{3/8}K^{3/4}", {{"T", R(3, 8)}, {"Tp", R(3, 8)}, {"K", R(3, 4)}}, "nonzero-3"),
        term("T^{3/4}K/|T'|^{1/4}", {{"T", R(3, 4)}, {"K", R(1)}, {"Tp", R(-1, 4)}}, "nonzero-3"),
    }};
}

namespace {

void check_a(const Rational& a) {
    if (a < R(3, 5) || a > R(1))
        throw RegimeViolation("|T'| = T^a needs 3/5 <= a <= 1, got a = " + to_string(a));
}

}  // namespace

Rational R_exponent(const Rational& a) {
    check_a(a);
    if (a >= R(5, 6)) return R(77, 180) * a - R(7, 36);
    return R(25, 36) * a - R(15, 36);
}

Rational K_floor(const Rational& a) {
    check_a(a);
    if (a >= R(5, 6)) return R(3, 16) + R(31, 80) * a;
    return R(13, 112) + R(53, 112) * a;
}

Rational K_ceiling(const Rational& a) {
    check_a(a);
    return (R(1) + a) / 2;
}

Rational term_exponent(const ExponentVector& v, const Rational& a, const KChoice& K) {
    if (v.get("N").numerator() != 0) throw InvalidArgs("ledger terms carry no N after the N^{1/2} factor");
    return v.get("T") + v.get("Tp") * a + v.get("K") * K.t_exponent(a) + v.get("r") * R_exponent(a);
}

Rational evaluate_sup(const TermLedger& ledger, const Rational& a, const KChoice& K) {
    check_a(a);
    Rational kappa = K.t_exponent(a);
    if (kappa > K_ceiling(a))
        throw ConstraintViolated("K = T^" + to_string(kappa) + " exceeds T^{1/2}|T'|^{1/2} = T^" +
                                 to_string(K_ceiling(a)));
    if (kappa < K_floor(a))
        throw ConstraintViolated("K = T^" + to_string(kappa) + " is below the floor T^" +
                                 to_string(K_floor(a)));
    if (ledger.terms.empty()) throw InvalidArgs("empty ledger");
    Rational best = term_exponent(ledger.terms.front().exps, a, K);
    for (const auto& t : ledger.terms) best = std::max(best, term_exponent(t.exps, a, K));
    return best;
}

KChoice paper_K(const Rational& a) {
    check_a(a);
    if (a >= R(5, 6)) return {R(4, 5), R(0)};
    return {R(8, 7), R(-2, 7)};
}

Rational theorem_exponent(const Rational& a) {
    check_a(a);
    if (a >= R(5, 6)) return R(7, 8) + R(19, 40) * a;
    return R(57, 56) + R(17, 56) * a;
}

Rational convexity_exponent(const Rational& a) { return R(3, 4) + R(3, 4) * a; }

OptimizeResult optimize_K(const TermLedger& ledger, const Rational& a, long long denominator) {
    check_a(a);
    if (denominator < 1) throw InvalidArgs("grid denominator must be positive");
    if (ledger.terms.empty()) throw InvalidArgs("empty ledger");
    // every term is c + s * kappa in powers of T
    struct Line {
        Rational c, s;
    };
    std::vector<Line> lines;
    const Rational rho = R_exponent(a);
    for (const auto& t : ledger.terms) {
        const auto& v = t.exps;
        lines.push_back({v.get("T") + v.get("Tp") * a + v.get("r") * rho, v.get("K")});
    }
    const Rational lo = K_floor(a), hi = K_ceiling(a);

    OptimizeResult res;
    res.a = a;
    bool found = false;
    for (long long kn = 0; kn <= 2 * denominator; ++kn) {
        for (long long jn = -denominator; jn <= denominator; ++jn) {
            KChoice K{Rational(kn, denominator), Rational(jn, denominator)};
            Rational kappa = K.t_exponent(a);
            ++res.grid_points;
            if (kappa < lo || kappa > hi) continue;
            Rational sup = lines[0].c + lines[0].s * kappa;
            for (const auto& l : lines) sup = std::max(sup, l.c + l.s * kappa);
            // ties go to the smallest |j|, then the smallest k
            bool better = !found || sup < res.sup ||
                          (sup == res.sup && (abs(K.j) < abs(res.K.j) ||
                                              (abs(K.j) == abs(res.K.j) && K.k < res.K.k)));
            if (better) {
                res.sup = sup;
                res.K = K;
                found = true;
            }
        }
    }
    if (!found)
        throw InfeasibleConstraints("no grid point satisfies the K constraints at a = " + to_string(a));
    res.paper_sup = evaluate_sup(ledger, a, paper_K(a));
    res.paper_match = res.paper_sup == res.sup;
    return res;
}

AfeCutoffs afe_cutoffs(const special::SpectralParams& p, long long r) {
    if (r < 1) throw InvalidArgs("r must be positive");
    const double T = p.T(), Tp = std::abs(p.Tprime());
    if (!(T > 1)) throw RegimeViolation("T must exceed 1");
    if (Tp < std::pow(T, 0.6))
        throw RegimeViolation("|T'| = " + std::to_string(Tp) + " is below T^{3/5}");
    AfeCutoffs c;
    c.N_max = std::pow(T, 1.5) * std::pow(Tp, 1.5) / (double(r) * double(r));
    if (Tp >= std::pow(T, 5.0 / 6.0)) {
        c.R_tp_exp = R(77, 180);
        c.R_t_exp = R(-7, 36);
    } else {
        c.R_tp_exp = R(25, 36);
        c.R_t_exp = R(-15, 36);
    }
    c.R = std::pow(Tp, boost::rational_cast<double>(c.R_tp_exp)) *
          std::pow(T, boost::rational_cast<double>(c.R_t_exp));
    return c;
}

DominationReport check_domination(const TermLedger& raw, const TermLedger& canonical) {
    // vertices of {3/5 <= a <= 1, 0 <= kappa <= (1+a)/2, 0 <= rho <= rho(a)}; rho is concave
    // with its kink at 5/6, so these points span the region
    struct Vertex {
        Rational a, kappa, rho;
    };
    std::vector<Vertex> vertices;
    for (Rational a : {R(3, 5), R(5, 6), R(1)})
        for (Rational kappa : {R(0), K_ceiling(a)})
            for (Rational rho : {R(0), R_exponent(a)}) vertices.push_back({a, kappa, rho});

    auto exponent = [](const ExponentVector& v, const Vertex& x) {
        return v.get("T") + v.get("Tp") * x.a + v.get("K") * x.kappa + v.get("r") * x.rho;
    };
    DominationReport rep;
    for (const auto& t : raw.terms) {
        bool ok = false;
        for (const auto& c : canonical.terms) {
            ExponentVector d = t.exps - c.exps;
            bool all = true;
            for (const auto& x : vertices)
                if (exponent(d, x) > Rational(0)) {
                    all = false;
                    break;
                }
            if (all) {
                rep.witness[t.group + ": " + t.label] = c.label;
                ok = true;
                break;
            }
        }
        if (!ok) rep.undominated.push_back(t.group + ": " + t.label);
    }
    return rep;
}

}  // namespace subconvex::ledger
