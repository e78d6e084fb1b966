#pragma once

#include <stdexcept>
#include <string>

namespace rigikit {

/// Malformed or inconsistent input (bad graph, bad schema, bad parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A bounded sampling loop ran out of retries.
class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rigikit
