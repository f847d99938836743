#pragma once

#include <stdexcept>
#include <string>

namespace halfline {

// Exit codes of the command-line front end follow the three categories.
struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace halfline
