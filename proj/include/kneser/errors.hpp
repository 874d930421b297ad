#pragma once

#include <stdexcept>
#include <string>

namespace kneser {

// Range errors use std::out_of_range, argument errors std::invalid_argument.

/// Thrown when an instance is too large to count or materialize.
class SizeError : public std::length_error {
public:
  explicit SizeError(const std::string& what) : std::length_error(what) {}
};

/// Thrown when an operation does not support the given parameters (e.g. r != 2).
class UnsupportedError : public std::logic_error {
public:
  explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

/// Thrown when a quantity is mathematically undefined for the input.
class UndefinedError : public std::domain_error {
public:
  explicit UndefinedError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace kneser
