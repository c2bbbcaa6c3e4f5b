#pragma once

#include <stdexcept>
#include <string>

namespace framelab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct InvalidDimensions : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct SingularFrameOperator : Error { using Error::Error; };
struct NotOneUniform : Error { using Error::Error; };
struct PatternBudgetExceeded : Error { using Error::Error; };
struct HypothesisViolated : Error { using Error::Error; };
struct UnknownCheckId : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

struct NotADual : Error {
    NotADual(const std::string& what, double residual_)
        : Error(what), residual(residual_) {}
    double residual;
};

}  // namespace framelab
