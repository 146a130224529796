#pragma once

#include <stdexcept>
#include <string>

namespace qorth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid spectrum, triad or argument.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Some angle omega_ij * tau sits on a multiple of pi; the closed-form
/// Family-II solver does not apply there, the Family-I solvers do.
class BoundaryCaseError : public Error {
 public:
  using Error::Error;
};

/// Mean energy and dispersion are not defined for a stationary state.
class UndefinedQslError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a closed form (e.g. an I-b edge endpoint).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qorth
