#pragma once

#include <stdexcept>
#include <string>

namespace ctw {

enum class ErrorKind {
    Validation,           // malformed input, violated preconditions
    Infeasible,           // no solution / search exhausted
    InternalConsistency,  // an asserted identity failed
};

/// Base error; `what()` is prefixed with the module name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& module, const std::string& msg)
        : std::runtime_error(module + ": " + msg), kind_(kind), module_(module) {}

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

class ValidationError : public Error {
public:
    ValidationError(const std::string& module, const std::string& msg)
        : Error(ErrorKind::Validation, module, msg) {}
};

class InfeasibleError : public Error {
public:
    InfeasibleError(const std::string& module, const std::string& msg)
        : Error(ErrorKind::Infeasible, module, msg) {}
};

class ConsistencyError : public Error {
public:
    ConsistencyError(const std::string& module, const std::string& msg)
        : Error(ErrorKind::InternalConsistency, module, msg) {}
};

}  // namespace ctw
