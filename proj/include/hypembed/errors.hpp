#pragma once

#include <stdexcept>
#include <string>

namespace hypembed {

// Invalid model/loss parameters or CLI arguments. CLI exit code 2.
class ParamError : public std::runtime_error {
 public:
  explicit ParamError(const std::string& what) : std::runtime_error(what) {}
};

// An operation that requires a connected graph got a disconnected one.
// CLI exit code 3.
class ConnectivityError : public std::runtime_error {
 public:
  explicit ConnectivityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data (files, coordinates). CLI exit code 4.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hypembed
