#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gnc {

/// Precondition or contract violation on an input (bad shape, out-of-range
/// parameter, zero column, non-orthogonal transform, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A serialized document (frame JSON, bound parameters, supports) does not
/// match its schema. Carries the first violation found.
class FormatError : public DomainError {
public:
    using DomainError::DomainError;
};

/// File system failure while reading or writing an artifact.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gradient descent produced a non-finite value.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, std::int64_t iter)
        : std::runtime_error(what), iter_(iter) {}

    std::int64_t iter() const noexcept { return iter_; }

private:
    std::int64_t iter_;
};

}  // namespace gnc
