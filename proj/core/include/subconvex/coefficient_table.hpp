#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subconvex/numeric.hpp"

namespace subconvex {

enum class CoeffKind { GL2_MAASS, GL2_DIVISOR_SURROGATE, GL3_D3_SURROGATE, ZERO };

std::string to_string(CoeffKind k);

// values[n - 1] holds the coefficient at n. For GL3 tables the stored row is
// A(1, n) = A(n, 1) (the surrogate is self-dual).
struct CoefficientTable {
    CoeffKind kind = CoeffKind::ZERO;
    double t_f = 0;
    int eps_f = 1;
    std::vector<cplx> values;

    std::int64_t n_max() const { return static_cast<std::int64_t>(values.size()); }
    cplx at(std::int64_t n) const;  // throws InsufficientData
};

}  // namespace subconvex
