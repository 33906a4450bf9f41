// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace edgemp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Input shape does not match the graph (wrong number of edges/vertices, width mismatch).
class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

/// A protocol is malformed for the graph it runs on: wrong state width,
/// out-of-neighborhood access, missing rounds.
class InvalidProtocol : public Error {
 public:
  using Error::Error;
};

/// A processor produced a state wider than its memory budget B.
class MemoryBudgetViolation : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle was asked for an instance beyond its enumeration cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace edgemp
