#include "subconvex/coeffs.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <regex>
#include <sstream>

#include "subconvex/arith.hpp"

namespace subconvex {

std::string to_string(CoeffKind k) {
    switch (k) {
        case CoeffKind::GL2_MAASS: return "GL2_MAASS";
        case CoeffKind::GL2_DIVISOR_SURROGATE: return "GL2_DIVISOR_SURROGATE";
        case CoeffKind::GL3_D3_SURROGATE: return "GL3_D3_SURROGATE";
        case CoeffKind::ZERO: return "ZERO";
    }
    return "?";
}

cplx CoefficientTable::at(std::int64_t n) const {
    if (n < 1) throw InvalidArgs("coefficient index must be >= 1");
    if (kind == CoeffKind::ZERO) return 0;
    if (n > n_max())
        throw InsufficientData("coefficient " + std::to_string(n) + " beyond n_max " +
                               std::to_string(n_max()));
    return values[static_cast<std::size_t>(n - 1)];
}

}  // namespace subconvex

namespace subconvex::coeffs {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (trim(s.substr(used)).empty() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("line " + std::to_string(line) + ": bad number '" + s + "'");
}

}  // namespace

CoefficientTable parse_coefficients(const std::string& text, const std::string& format) {
    if (format != "gl2-maass") throw ParseError("unknown coefficient format '" + format + "'");
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    CoefficientTable t;
    t.kind = CoeffKind::GL2_MAASS;

    if (!std::getline(in, line)) throw ParseError("empty coefficient file");
    ++lineno;
    static const std::regex header(
        R"(^#\s*gl2-maass\s+t_f=([^\s]+)\s+eps_f=([+-]?1)\s*$)");
    std::smatch m;
    const std::string h = trim(line);
    if (!std::regex_match(h, m, header))
        throw ParseError("header must read '# gl2-maass t_f=<real> eps_f=<+1|-1>'");
    t.t_f = parse_double(m[1].str(), 1);
    t.eps_f = std::stoi(m[2].str());
    if (!(t.t_f > 0)) throw ParseError("t_f must be positive");

    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::vector<std::string> f;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(trim(cell));
        if (f.size() != 3) throw ParseError("line " + std::to_string(lineno) + ": expected n,re,im");
        double nd = parse_double(f[0], lineno);
        if (nd != std::floor(nd) || nd < 1)
            throw ParseError("line " + std::to_string(lineno) + ": bad index");
        const auto n = static_cast<std::size_t>(nd);
        if (n != t.values.size() + 1)
            throw ParseError("line " + std::to_string(lineno) + ": expected n = " +
                             std::to_string(t.values.size() + 1));
        t.values.emplace_back(parse_double(f[1], lineno), parse_double(f[2], lineno));
    }
    if (t.values.empty()) throw ParseError("no coefficient rows");
    if (std::abs(t.values[0] - cplx(1)) > 1e-6)
        throw ValidationError("lambda(1) must be 1", 1, 1);

    validate_multiplicative(t);
    if (t.n_max() >= 64) {
        arith::RsConfig cfg;
        cfg.ceiling = 20;
        cfg.log_power = 1;
        auto rep = arith::rs_partial_sum_check(t, t.n_max(), cfg);
        if (rep.violation)
            throw ValidationError("Rankin-Selberg partial sum too large at N = " +
                                      std::to_string(rep.first_violation_N),
                                  rep.first_violation_N, 0);
    }
    return t;
}

CoefficientTable load_coefficients(const std::string& path, const std::string& format) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_coefficients(ss.str(), format);
}

std::string format_coefficients(const CoefficientTable& table) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "# gl2-maass t_f=" << table.t_f << " eps_f=" << (table.eps_f < 0 ? "-1" : "+1") << "\n";
    for (std::size_t i = 0; i < table.values.size(); ++i)
        out << (i + 1) << "," << table.values[i].real() << "," << table.values[i].imag() << "\n";
    return out.str();
}

void write_coefficients(const CoefficientTable& table, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidArgs("cannot write " + path);
    f << format_coefficients(table);
}

void validate_multiplicative(const CoefficientTable& table, i64 limit, double tol) {
    if (table.kind == CoeffKind::ZERO) return;
    const i64 nm = table.n_max();
    for (i64 m = 2; m <= limit; ++m)
        for (i64 n = m + 1; n <= limit && m * n <= nm; ++n) {
            if (std::gcd(m, n) != 1) continue;
            cplx lhs = table.values[m * n - 1], rhs = table.values[m - 1] * table.values[n - 1];
            if (std::abs(lhs - rhs) > tol * std::max(1.0, std::abs(rhs)))
                throw ValidationError("lambda(" + std::to_string(m * n) + ") != lambda(" +
                                          std::to_string(m) + ") lambda(" + std::to_string(n) + ")",
                                      m, n);
        }
}

CoefficientTable divisor_surrogate(i64 n_max, double t_f) {
    if (n_max < 1) throw InvalidArgs("n_max must be >= 1");
    CoefficientTable t;
    t.kind = CoeffKind::GL2_DIVISOR_SURROGATE;
    t.t_f = t_f;
    t.values.assign(static_cast<std::size_t>(n_max), cplx{});
    for (i64 a = 1; a <= n_max; ++a)
        for (i64 b = 1; a * b <= n_max; ++b)
            t.values[a * b - 1] += std::polar(1.0, t_f * std::log(double(a) / double(b)));
    return t;
}

CoefficientTable d3_surrogate(i64 n_max) {
    if (n_max < 1) throw InvalidArgs("n_max must be >= 1");
    CoefficientTable t;
    t.kind = CoeffKind::GL3_D3_SURROGATE;
    auto d = arith::d3_table(n_max);
    t.values.reserve(static_cast<std::size_t>(n_max));
    for (i64 n = 1; n <= n_max; ++n) t.values.emplace_back(double(d[n]), 0.0);
    return t;
}

CoefficientTable zero_table(i64 n_max) {
    CoefficientTable t;
    t.kind = CoeffKind::ZERO;
    t.values.assign(static_cast<std::size_t>(std::max<i64>(n_max, 0)), cplx{});
    return t;
}

i64 voronoi_dual_length(i64 q, const transforms::GSpec& g) {
    const double s = g.t_f + std::abs(g.t) + std::abs(g.beta) + 2;
    return static_cast<i64>(std::ceil(4.0 * double(q) * double(q) * s * s / g.N));
}

VoronoiReport verify_gl2_voronoi(const CoefficientTable& table, i64 a, i64 q,
                                 const transforms::GSpec& g, i64 trunc, double rel_tol) {
    if (q < 1) throw InvalidArgs("q must be >= 1");
    if (trunc < 1) throw InvalidArgs("trunc must be >= 1");
    if (table.kind == CoeffKind::GL2_DIVISOR_SURROGATE || table.kind == CoeffKind::GL3_D3_SURROGATE)
        throw NotCuspidal(to_string(table.kind) + " needs polar terms outside this check");
    VoronoiReport rep;
    rep.trunc = trunc;
    if (table.kind == CoeffKind::ZERO) {
        rep.status = "PASS";
        rep.reason = "zero table";
        return rep;
    }
    const i64 top = static_cast<i64>(std::floor(2 * g.N));
    if (top > table.n_max() || trunc > table.n_max())
        throw InsufficientData("table covers n <= " + std::to_string(table.n_max()) + ", need " +
                               std::to_string(std::max(top, trunc)));
    const i64 abar = q == 1 ? 0 : arith::inverse_mod(((a % q) + q) % q, q);

    transforms::GSpec gs = g;
    gs.t_f = table.t_f;
    gs.eps_f = table.eps_f;

    KahanSum lhs;
    for (i64 n = static_cast<i64>(std::ceil(g.N)); n <= top; ++n) {
        cplx gv = gs.g(double(n));
        if (gv == cplx{}) continue;
        lhs.add(table.values[n - 1] * e_of(double(a % q) * double(n) / double(q)) * gv);
    }

    KahanSum rhs;
    double tail = 0;
    const i64 tail_from = std::max<i64>(1, trunc - trunc / 8);
    for (i64 n = 1; n <= trunc; ++n) {
        const double y = double(n) / (double(q) * double(q));
        for (int sg : {1, -1}) {
            cplx G = transforms::G_transform_bessel(y, gs, sg, 1e-9).value;
            cplx term = table.values[n - 1] / double(n) *
                        e_of(-sg * double(abar) * double(n) / double(q)) * G;
            rhs.add(double(q) * term);
            if (n >= tail_from) tail += std::abs(double(q) * term);
        }
    }
    rep.lhs = lhs.value();
    rep.rhs = rhs.value();
    rep.tail_estimate = tail;
    rep.discrepancy = std::abs(rep.lhs - rep.rhs) / std::max(std::abs(rep.lhs), 1e-12);
    rep.status = rep.discrepancy <= rel_tol ? "PASS" : "FAIL";
    return rep;
}

}  // namespace subconvex::coeffs
