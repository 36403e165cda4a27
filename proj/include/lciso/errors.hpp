#pragma once

#include <stdexcept>
#include <string>

namespace lciso {

// Base for every error the library raises on bad input or infeasible requests.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quantile was requested inside the tail exclusion band of a measure whose
// quantile is reconstructed by quadrature.
class QuantileOutOfBand : public Error {
 public:
  using Error::Error;
};

class InvalidInterval : public Error {
 public:
  using Error::Error;
};

// The set has measure 0 or 1, so asymmetry/deficit are undefined.
class DegenerateMeasure : public Error {
 public:
  using Error::Error;
};

// (m, lambda) outside 0 <= lambda <= min(2m, 1 - m).
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class EmptyBin : public Error {
 public:
  using Error::Error;
};

// Measure construction failures: asymmetric profile, bad parameters, bad config.
class InvalidMeasure : public Error {
 public:
  using Error::Error;
};

// Raised when an internal postcondition of a constructive routine fails.
class PostconditionFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace lciso
