// Copyright 2026 The adascale Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ADASCALE_ERRORS_HPP
#define ADASCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace adascale {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Gram matrix stayed indefinite after exhausting jitter escalation.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

// Requested dimension exceeds the shipped Sobol direction-number table.
class DimensionUnsupported : public Error {
 public:
  using Error::Error;
};

// An objective returned NaN or infinity at a queried point.
class NonFiniteObjective : public Error {
 public:
  using Error::Error;
};

class InvalidTrustRegion : public Error {
 public:
  using Error::Error;
};

// Every fitting restart failed (typically all raised NotPositiveDefinite).
class FitFailed : public Error {
 public:
  using Error::Error;
};

// The black-box objective failed during an optimizer run.
class ObjectiveFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Traces passed to summarize() disagree in length or grouping.
class MismatchedTraces : public Error {
 public:
  using Error::Error;
};

// A point lies outside the normalized domain [0,1]^D.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

}  // namespace adascale

#endif  // ADASCALE_ERRORS_HPP
