#pragma once

#include <stdexcept>

namespace ifock {

// Failure modes surfaced to callers. The CLI maps these onto its exit-code
// contract: ParseError -> 2, measure-validity errors -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Measure parameters out of range (variance <= 0, a <= 0, m0 != 1, ...).
struct InvalidMeasure : Error { using Error::Error; };
// Raw moment sequence too short for the requested order/depth.
struct UnsupportedOrder : Error { using Error::Error; };
struct DepthUnavailable : Error { using Error::Error; };
// A leading principal Hankel minor is not strictly positive.
struct PositivityViolation : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
// z outside (the finite-depth estimate of) the disk of convergence.
struct OutsideDomain : Error { using Error::Error; };
struct DegreeOverflow : Error { using Error::Error; };
struct QuadratureDegreeTooLow : Error { using Error::Error; };
struct QuadratureFailure : Error { using Error::Error; };
struct Unsupported : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace ifock
