#pragma once

#include <stdexcept>
#include <string>

namespace mfspin {

/// Bad arguments or violated preconditions.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Requested Hilbert-space dimension exceeds the configured cap.
class SizingError : public std::runtime_error {
public:
    explicit SizingError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numerical routine failed to reach its accuracy target.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two algebraically equivalent evaluation routes disagreed.
class ConsistencyError : public NumericError {
public:
    explicit ConsistencyError(const std::string& msg) : NumericError(msg) {}
};

} // namespace mfspin
