#pragma once

#include <stdexcept>
#include <string>

namespace subconvex {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SUBCONVEX_ERROR(Name)                                      \
    class Name : public Error {                                    \
    public:                                                        \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

SUBCONVEX_ERROR(NotCoprime);
SUBCONVEX_ERROR(MissingCoefficient);
SUBCONVEX_ERROR(InsufficientData);
SUBCONVEX_ERROR(InvalidArgs);
SUBCONVEX_ERROR(OutOfRange);
SUBCONVEX_ERROR(OutOfDomain);
SUBCONVEX_ERROR(QuadratureFailure);
SUBCONVEX_ERROR(PoleAt);
SUBCONVEX_ERROR(ConvergenceFailure);
SUBCONVEX_ERROR(NoCriticalPoint);
SUBCONVEX_ERROR(DegenerateSecondDerivative);
SUBCONVEX_ERROR(MisdeclaredScales);
SUBCONVEX_ERROR(TruncationFailure);
SUBCONVEX_ERROR(SeriesDivergence);
SUBCONVEX_ERROR(WrongRegime);
SUBCONVEX_ERROR(ConstraintViolated);
SUBCONVEX_ERROR(InfeasibleConstraints);
SUBCONVEX_ERROR(RegimeViolation);
SUBCONVEX_ERROR(ParseError);
SUBCONVEX_ERROR(NotCuspidal);
SUBCONVEX_ERROR(ConfigError);

#undef SUBCONVEX_ERROR

// ValidationError carries the first offending (m, n) pair when there is one.
class ValidationError : public Error {
public:
    ValidationError(const std::string& what, long long m = 0, long long n = 0)
        : Error("ValidationError: " + what), m_(m), n_(n) {}
    long long m() const { return m_; }
    long long n() const { return n_; }

private:
    long long m_, n_;
};

}  // namespace subconvex
