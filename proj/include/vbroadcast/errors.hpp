#pragma once

#include <stdexcept>
#include <string>

namespace vbroadcast {

/// Bad argument values (empty lists, out-of-range indices, non-bijective
/// permutations, domain violations).
class argument_error : public std::invalid_argument {
public:
  explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Request exceeds a documented capability (dimension caps, N! enumeration).
class capability_error : public std::runtime_error {
public:
  explicit capability_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A declared type or operation invariant does not hold on the given data
/// (non-Hermitian input to a spectral routine, invalid density matrix, ...).
class contract_violation : public std::logic_error {
public:
  explicit contract_violation(const std::string& msg) : std::logic_error(msg) {}
};

/// An iterative routine stopped without reaching its convergence target.
class convergence_error : public std::runtime_error {
public:
  explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vbroadcast
