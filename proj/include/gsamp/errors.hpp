#pragma once

#include <stdexcept>
#include <string>

namespace gsamp {

// Bad user input: config files, CLI values, malformed data files. Exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Randomized construction exhausted its retry budget. Exit code 3.
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed where the model guarantees it should not
// (e.g. an SPD factorization rejected its input). Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gsamp
