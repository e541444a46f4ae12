#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chenbound {

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive refinement ran out of depth before meeting its tolerance.
class NonConvergent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An integrand was evaluated where it is not defined (e.g. ω at an argument below 1).
class UndefinedIntegrand : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One or more parameter constraints failed; `violations()` names each one.
class ConstraintViolation : public std::invalid_argument {
public:
    explicit ConstraintViolation(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

class ThresholdNotBracketed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RootNotBracketed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularMatrix : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace chenbound
