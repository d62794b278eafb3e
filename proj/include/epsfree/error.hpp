#pragma once

#include <stdexcept>
#include <string>

namespace epsfree {

/// Invalid input: malformed matrices, size mismatches, unmet preconditions.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured size bound (Weingarten order, tensor dimension) was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace epsfree
