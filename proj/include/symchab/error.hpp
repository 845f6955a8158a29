#ifndef SYMCHAB_ERROR_HPP
#define SYMCHAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace symchab {

/// Malformed input or a violated precondition. The CLI maps this to exit status 2.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A caller-supplied set or flag contradicts what the library recomputes.
class ContractViolation : public InputError {
public:
    using InputError::InputError;
};

/// A well-posed computation that could not be completed (exit status 3).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InputError(msg);
}

} // namespace symchab

#endif // SYMCHAB_ERROR_HPP
