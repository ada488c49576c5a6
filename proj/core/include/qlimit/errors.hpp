#pragma once

#include <stdexcept>
#include <string>

namespace qlimit {

// Base class for every error raised by the library. Callers that only need
// to report a failure can catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (negative time, kappa <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Quantum number outside the model's spectrum (Box n=0, Morse past the top of the well).
class IndexOutOfSpectrum : public Error {
 public:
  using Error::Error;
};

// Superposition amplitudes with |a|^2 + |b|^2 != 1.
class NotNormalized : public Error {
 public:
  using Error::Error;
};

// Series summation hit max_terms before its tail bound certified the result.
class NonConvergent : public Error {
 public:
  using Error::Error;
};

// Mean energy is zero, so the moment-ratio period is undefined.
class ZeroEnergy : public Error {
 public:
  using Error::Error;
};

// Two diffusive configurations that must share kappa, omega, lambda do not.
class MismatchedConfig : public Error {
 public:
  using Error::Error;
};

// Malformed model preset file.
class PresetError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlimit
