#pragma once

#include <stdexcept>
#include <string>

namespace ritzsym {

// Bad call arguments: shape mismatches, zero vectors, malformed inputs.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Numeric/domain failures: function evaluated outside its domain,
// parameters outside the valid range, dense-size caps exceeded.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative eigensolver hit its iteration cap.
class ConvergenceError : public DomainError {
public:
    ConvergenceError(const std::string& what, std::size_t index)
        : DomainError(what + " (index " + std::to_string(index) + ")"), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

// File-level problems: missing files, malformed formats.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ritzsym
