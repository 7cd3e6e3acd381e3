#pragma once

#include <stdexcept>
#include <string>

namespace nonrecip {

// Configuration/validation problems: bad keys, violated invariants,
// malformed grids. Messages always name the offending key or flag.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(const std::string &msg) : std::runtime_error(msg) {}
};

// A precondition of a closed-form path was violated (e.g. nonzero cavity
// detuning where only the resonant closed form applies).
class ContractError : public std::runtime_error {
public:
  explicit ContractError(const std::string &msg) : std::runtime_error(msg) {}
};

// Singular denominators, non-converged eigenproblems, diverged integrations.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string &msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace nonrecip
