#pragma once

#include <stdexcept>
#include <string>

namespace bsfv {

/// Status categories mirrored by the C API.
enum class Status {
    Ok = 0,
    InvalidArgument,
    SingularOperator,
    SolveFailure,
    IoFailure,
    Internal,
};

/// Base error type; every throwing operation in the core uses it so the C API
/// can map failures to status codes without losing the message.
class Error : public std::runtime_error {
public:
    Error(Status status, const std::string& message)
        : std::runtime_error(message), status_(status) {}

    Status status() const { return status_; }

private:
    Status status_;
};

inline void require(bool condition, const std::string& message,
                    Status status = Status::InvalidArgument) {
    if (!condition) throw Error(status, message);
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Symmetric 2x2 tensor (diffusion coefficient block).
struct SymTensor2 {
    double m11 = 0.0;
    double m12 = 0.0;
    double m22 = 0.0;
};

} // namespace bsfv
