#ifndef QCHARMLAB_ERRORS_HPP
#define QCHARMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcharmlab {

enum class ErrorCode {
    SelfIntersecting,
    DegenerateInput,
    OutsideDomain,
    AmbiguousFoot,
    SingularCollar,
    InvalidRadius,
    BoundaryDivergence,
    OrientationFailure,
    NotHomeomorphism,
    EmptyCollar,
    CollarEscape,
    NotSubharmonic,
    SignError,
    VerificationFailure,
    LewyViolation,
    MaxPrincipleFailure,
    ConfigError,
};

const char* error_code_name(ErrorCode code);

// Structured error: a stable code (what went wrong) plus a human message
// (where/by how much). Stage runners catch these and embed them in reports.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }
    const char* code_name() const { return error_code_name(code_); }

  private:
    ErrorCode code_;
};

}  // namespace qcharmlab

#endif
