#pragma once

#include <stdexcept>
#include <string>

namespace hkdyn {

// Raised when an input violates an operation's documented precondition.
// The CLI maps this to exit code 2.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when a computed quantity breaks a bound that the mathematics
// guarantees (Hasse, Weil, internal cross-checks). Always a bug upstream.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw precondition_error(message);
    }
}

}  // namespace hkdyn
