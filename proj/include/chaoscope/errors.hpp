#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chaoscope {

// Base class for every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration / parameter errors.
class InvalidConfig : public Error {
public:
  using Error::Error;
};

// Series construction violated an invariant (positivity, range, length).
class InvalidSeries : public Error {
public:
  using Error::Error;
};

// Fewer than two timestamps, so no interval can be formed.
class TooShort : public Error {
public:
  using Error::Error;
};

// Timestamps not strictly increasing; carries the first offending index.
class NonMonotonic : public Error {
public:
  NonMonotonic(std::size_t index, const std::string& what) : Error(what), index_(index) {}
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

// Series shorter than the embedding window; carries the required minimum.
class SeriesTooShort : public Error {
public:
  SeriesTooShort(std::size_t required, const std::string& what) : Error(what), required_(required) {}
  std::size_t required_length() const { return required_; }

private:
  std::size_t required_;
};

class AxisOutOfRange : public Error {
public:
  using Error::Error;
};

// Gaussian rejection sampling exhausted its retry budget.
class RejectionOverflow : public Error {
public:
  using Error::Error;
};

class InvalidHorizon : public Error {
public:
  using Error::Error;
};

class TooFewPoints : public Error {
public:
  using Error::Error;
};

class EmptyScalingRegion : public Error {
public:
  using Error::Error;
};

class DegenerateSeries : public Error {
public:
  using Error::Error;
};

// A surrogate's dimension estimate failed; carries the surrogate index.
class SurrogateDegenerate : public Error {
public:
  SurrogateDegenerate(std::size_t index, const std::string& what) : Error(what), index_(index) {}
  std::size_t surrogate_index() const { return index_; }

private:
  std::size_t index_;
};

// File-level errors, 1-based physical line numbers.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what) : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class MonotonicityError : public ParseError {
public:
  using ParseError::ParseError;
};

class EmptyFile : public Error {
public:
  using Error::Error;
};

// Deliberate guard: binned count files cannot be embedded.
class UnsupportedForEmbedding : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class EmptyCloud : public Error {
public:
  using Error::Error;
};

}  // namespace chaoscope
