#ifndef QCOH_ERRORS_HPP
#define QCOH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcoh {

// Base class for everything this library throws on contract violations.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix handed to the eigensolver is not Hermitian within tolerance.
class NonHermitianError : public Error {
public:
    using Error::Error;
};

// Jacobi iteration failed to push the off-diagonal norm below threshold.
class NoConvergenceError : public Error {
public:
    using Error::Error;
};

// Density matrix or pure state violates its invariants (trace, norm, PSD).
class InvalidStateError : public Error {
public:
    using Error::Error;
};

// Partial trace asked to keep a subsystem index that does not exist.
class BadSubsystemError : public Error {
public:
    using Error::Error;
};

// Two states fed to a binary measure do not share a dimension.
class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

// Total coherence exceeded local + collective: an implementation bug,
// since the bound is the triangle inequality through the marginal product.
class TradeoffViolationError : public Error {
public:
    using Error::Error;
};

// Site partition is not a disjoint cover of the register.
class BadPartitionError : public Error {
public:
    using Error::Error;
};

// Model parameter outside the supported domain (e.g. D = 0 without a flag).
class InvalidParamError : public Error {
public:
    using Error::Error;
};

// Derivative requested where the flow has saturated; the record is missing.
class FlowSaturatedError : public Error {
public:
    using Error::Error;
};

// Bisection bracket does not straddle a root.
class NoSignChangeError : public Error {
public:
    using Error::Error;
};

} // namespace qcoh

#endif
