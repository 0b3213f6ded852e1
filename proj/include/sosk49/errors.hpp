#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sosk49 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Order construction.
struct NotTotallyReal : Error {
    using Error::Error;
};
struct Reducible : Error {
    using Error::Error;
};

// Element arithmetic.
struct MixedOrders : Error {
    using Error::Error;
};

// Lattice forms.
struct NotPositiveDefinite : Error {
    using Error::Error;
};

// Dyadic layer.
struct NotInert : Error {
    using Error::Error;
};

// Operations proved only for the discriminant-49 order.
struct UnsupportedOrder : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};
struct NotEven : Error {
    using Error::Error;
};
struct KYRepresentationMissing : Error {
    using Error::Error;
};
struct NotTotallyPositive : Error {
    using Error::Error;
};

/// Raised when the five statements of the characterisation theorem disagree
/// on some element; carries the offending report serialized as JSON text.
struct InconsistentEquivalence : Error {
    std::string report_json;
    InconsistentEquivalence(const std::string& msg, std::string report)
        : Error(msg), report_json(std::move(report)) {}
};

/// Element / order text syntax errors; `position` is a 0-based byte offset.
struct ParseError : Error {
    std::size_t position;
    ParseError(const std::string& msg, std::size_t pos) : Error(msg), position(pos) {}
};

}  // namespace sosk49
