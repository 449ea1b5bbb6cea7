#pragma once

#include <cstdint>
#include <string>

#include "subconvex/coefficient_table.hpp"
#include "subconvex/transforms.hpp"

namespace subconvex::coeffs {

using i64 = std::int64_t;

// Plain text: "# gl2-maass t_f=<real> eps_f=<+1|-1>" then "n,re,im" rows for n = 1..n_max.
// ParseError on malformed input; ValidationError with the first failing (m, n) pair when
// lambda(mn) != lambda(m) lambda(n) for coprime m, n <= 100, or when the Rankin-Selberg
// partial sums grow too fast.
CoefficientTable load_coefficients(const std::string& path, const std::string& format = "gl2-maass");
CoefficientTable parse_coefficients(const std::string& text, const std::string& format = "gl2-maass");
void write_coefficients(const CoefficientTable& table, const std::string& path);
std::string format_coefficients(const CoefficientTable& table);

void validate_multiplicative(const CoefficientTable& table, i64 limit = 100, double tol = 1e-6);

// lambda(n) = sum_{ab = n} (a/b)^{i t_f}
CoefficientTable divisor_surrogate(i64 n_max, double t_f);
// A(1, n) = d3(n)
CoefficientTable d3_surrogate(i64 n_max);
CoefficientTable zero_table(i64 n_max);

struct VoronoiReport {
    std::string status;  // "PASS", "FAIL", "SKIPPED"
    std::string reason;
    cplx lhs, rhs;
    double discrepancy = 0;  // |lhs - rhs| / max(|lhs|, 1e-12)
    double tail_estimate = 0;
    i64 trunc = 0;
};

// g(x) = e(beta x/N) x^{-it} W(x/N), W the unit-height bump on [1, 2] (GSpec with B = 0).
// NotCuspidal for surrogate kinds; InsufficientData when 2N or trunc exceeds n_max.
VoronoiReport verify_gl2_voronoi(const CoefficientTable& table, i64 a, i64 q,
                                 const transforms::GSpec& g, i64 trunc, double rel_tol = 1e-2);

// Suggested dual length: 4 q^2 (t_f + |beta| + 2)^2 / N
i64 voronoi_dual_length(i64 q, const transforms::GSpec& g);

}  // namespace subconvex::coeffs
