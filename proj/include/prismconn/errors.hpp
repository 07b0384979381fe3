#pragma once

#include <stdexcept>
#include <string>

namespace prismconn {

// Malformed domain/model/job configuration. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Quadrature did not reach its tolerance, or a result came out non-finite.
// The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed form was requested for a model that has none registered.
class UnsupportedModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace prismconn
