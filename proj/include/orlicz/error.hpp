#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Raised when an input lies outside the domain of an operation
/// (bad family parameters, missing Δ2 certificate, infeasible samples, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

} // namespace orlicz
